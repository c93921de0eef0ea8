//! Thin typed client for the lyra2re service.

use lyra2re_api as api;
use reqwest::StatusCode;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("transport: {0}")]
    Transport(#[from] reqwest::Error),
    #[error("{status}: {message}")]
    Api { status: StatusCode, message: String },
}

/// Handle to one service instance.
#[derive(Clone, Debug)]
pub struct Client {
    base: String,
    http: reqwest::Client,
}

impl Client {
    /// `base` like `http://127.0.0.1:8460` (trailing slash tolerated).
    pub fn new(base: impl Into<String>) -> Self {
        Client {
            base: base.into().trim_end_matches('/').to_string(),
            http: reqwest::Client::new(),
        }
    }

    pub fn base_url(&self) -> &str {
        &self.base
    }

    async fn decode<T: serde::de::DeserializeOwned>(
        resp: reqwest::Response,
    ) -> Result<T, ClientError> {
        let status = resp.status();
        if status.is_success() {
            Ok(resp.json::<T>().await?)
        } else {
            let message = match resp.json::<api::ErrorBody>().await {
                Ok(body) => body.error,
                Err(_) => status.to_string(),
            };
            Err(ClientError::Api { status, message })
        }
    }

    async fn post<B: serde::Serialize, T: serde::de::DeserializeOwned>(
        &self,
        path: &str,
        body: &B,
    ) -> Result<T, ClientError> {
        let resp = self
            .http
            .post(format!("{}{path}", self.base))
            .json(body)
            .send()
            .await?;
        Self::decode(resp).await
    }

    pub async fn health(&self) -> Result<api::Health, ClientError> {
        let resp = self
            .http
            .get(format!("{}/health", self.base))
            .send()
            .await?;
        Self::decode(resp).await
    }

    pub async fn hash(&self, req: &api::HashRequest) -> Result<api::HashResponse, ClientError> {
        self.post("/v1/hash", req).await
    }

    pub async fn plan(&self, req: &api::PlanRequest) -> Result<api::PlanResponse, ClientError> {
        self.post("/v1/plan", req).await
    }

    pub async fn simulate(
        &self,
        req: &api::SimulateRequest,
    ) -> Result<api::SimulateResponse, ClientError> {
        self.post("/v1/simulate", req).await
    }

    pub async fn submit_job(&self, req: &api::JobRequest) -> Result<api::JobCreated, ClientError> {
        self.post("/v1/jobs", req).await
    }

    pub async fn job_status(&self, id: u64) -> Result<api::JobStatus, ClientError> {
        let resp = self
            .http
            .get(format!("{}/v1/jobs/{id}", self.base))
            .send()
            .await?;
        Self::decode(resp).await
    }

    pub async fn flush_job(&self, id: u64) -> Result<api::JobStatus, ClientError> {
        let resp = self
            .http
            .delete(format!("{}/v1/jobs/{id}", self.base))
            .send()
            .await?;
        Self::decode(resp).await
    }

    /// Polls a job until it leaves the running state.
    pub async fn wait_for_job(
        &self,
        id: u64,
        poll_every: std::time::Duration,
    ) -> Result<api::JobStatus, ClientError> {
        loop {
            let status = self.job_status(id).await?;
            if status.state != api::JobState::Running {
                return Ok(status);
            }
            tokio::time::sleep(poll_every).await;
        }
    }

    pub async fn vectors_generate(
        &self,
        req: &api::VectorsGenerateRequest,
    ) -> Result<api::VectorsGenerateResponse, ClientError> {
        self.post("/v1/vectors/generate", req).await
    }

    pub async fn vectors_verify(
        &self,
        req: &api::VectorsVerifyRequest,
    ) -> Result<api::VectorsVerifyResponse, ClientError> {
        self.post("/v1/vectors/verify", req).await
    }

    pub async fn bench(&self, req: &api::BenchRequest) -> Result<api::BenchResponse, ClientError> {
        self.post("/v1/bench", req).await
    }
}
