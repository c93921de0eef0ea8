//! `lyra2red` — the hashing/mining service daemon.
//!
//! Usage: `lyra2red [LISTEN_ADDR]` (default 127.0.0.1:8460). The bound
//! address is printed on stdout once the listener is up.

use tracing_subscriber::EnvFilter;

#[tokio::main]
async fn main() {
    tracing_subscriber::fmt()
        .with_env_filter(EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()))
        .init();

    let addr = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "127.0.0.1:8460".to_string());
    let listener = tokio::net::TcpListener::bind(&addr)
        .await
        .unwrap_or_else(|e| panic!("cannot bind {addr}: {e}"));
    let local = listener.local_addr().expect("local addr");
    println!("listening on http://{local}");
    tracing::info!(%local, "service up");

    axum::serve(listener, lyra2re_service::router())
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
        .expect("server run");
}
