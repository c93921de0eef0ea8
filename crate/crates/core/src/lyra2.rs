//! The simplified Lyra2 used by Lyra2REv2 and the Lyra2MOD variant used by
//! Lyra2REv3.
//!
//! Both run bootstrap → setup → wandering → wrap-up over an R×C matrix of
//! 768-bit cells, with the chain's parameters T=1, R=C=4, ω=64 and a 256-bit
//! output. The only difference between the variants is how the wandering
//! phase picks the pseudorandom row: Lyra2REv2 takes the least-significant
//! word of the last duplex output, Lyra2MOD chains a 4-bit `instance`
//! selector through zero-round reads of the full sponge state (including
//! the capacity words).

use crate::sponge::{DuplexSponge, RateBlock, RATE_BYTES, RATE_WORDS, ZERO_BLOCK};
use thiserror::Error;

/// Fixed 256-bit input width; the chain always feeds 32-byte values.
pub const INPUT_BYTES: usize = 32;

/// Which wandering-phase row selection to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lyra2Variant {
    /// Simplified Lyra2 as in Lyra2REv2.
    Rev2,
    /// Lyra2MOD as in Lyra2REv3.
    Mod,
}

/// Cost and geometry parameters.
///
/// Defaults are the chain's values (T=1, R=C=4, ω=64, 32-byte output).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lyra2Params {
    /// Time cost T: wandering revisits R·T deterministic rows.
    pub time_cost: u64,
    /// Rows R of the memory matrix.
    pub rows: usize,
    /// Columns C of the memory matrix.
    pub cols: usize,
    /// Rotation ω applied to revisited-row updates, in bits.
    pub omega_bits: u32,
    /// Output length k in bytes.
    pub output_len: usize,
}

impl Default for Lyra2Params {
    fn default() -> Self {
        Lyra2Params {
            time_cost: 1,
            rows: 4,
            cols: 4,
            omega_bits: 64,
            output_len: 32,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Lyra2ParamsError {
    #[error("need at least 3 rows (setup revisits row0 - 2), got {0}")]
    TooFewRows(usize),
    #[error("need at least 1 column")]
    NoColumns,
    #[error("time cost must be at least 1")]
    ZeroTimeCost,
    #[error("output length {0} exceeds the {RATE_BYTES}-byte rate")]
    OutputTooLong(usize),
    #[error("rotation must be a multiple of 64 bits below the rate width, got {0}")]
    BadRotation(u32),
}

impl Lyra2Params {
    pub fn validate(&self) -> Result<(), Lyra2ParamsError> {
        if self.rows < 3 {
            return Err(Lyra2ParamsError::TooFewRows(self.rows));
        }
        if self.cols == 0 {
            return Err(Lyra2ParamsError::NoColumns);
        }
        if self.time_cost == 0 {
            return Err(Lyra2ParamsError::ZeroTimeCost);
        }
        if self.output_len > RATE_BYTES {
            return Err(Lyra2ParamsError::OutputTooLong(self.output_len));
        }
        if !self.omega_bits.is_multiple_of(64) || self.omega_bits as usize >= RATE_WORDS * 64 {
            return Err(Lyra2ParamsError::BadRotation(self.omega_bits));
        }
        Ok(())
    }

    fn omega_words(&self) -> usize {
        self.omega_bits as usize / 64
    }
}

/// The R×C grid of rate-sized cells written during setup and revisited
/// during wandering.
pub struct MemoryMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<RateBlock>,
}

impl MemoryMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        MemoryMatrix {
            rows,
            cols,
            cells: vec![ZERO_BLOCK; rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cell(&self, row: usize, col: usize) -> &RateBlock {
        &self.cells[row * self.cols + col]
    }

    fn set(&mut self, row: usize, col: usize, value: RateBlock) {
        self.cells[row * self.cols + col] = value;
    }

    fn xor(&mut self, row: usize, col: usize, value: &RateBlock) {
        let cell = &mut self.cells[row * self.cols + col];
        for (w, v) in cell.iter_mut().zip(value) {
            *w ^= v;
        }
    }
}

/// Which phase produced a trace event.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Setup0,
    Setup1,
    Setup2,
    Wandering,
}

/// One reduced-duplex step, reported to the differential-debugging hook.
/// `col` is the loop index; setup phases write column `C-1-col`, the
/// wandering phase writes column `col`. For Lyra2MOD wandering events
/// `instance` carries the 4-bit selector used for the row choice.
#[derive(Clone, Copy, Debug)]
pub struct TraceEvent<'a> {
    pub phase: Phase,
    pub row0: usize,
    pub row1: Option<usize>,
    pub col: usize,
    pub instance: Option<u8>,
    pub rand: &'a RateBlock,
}

/// Differential-debugging hook; invoked once per reduced duplex call.
pub type TraceHook<'a> = dyn FnMut(TraceEvent<'_>) + 'a;

fn add_blocks(a: &RateBlock, b: &RateBlock) -> RateBlock {
    let mut out = ZERO_BLOCK;
    for i in 0..RATE_WORDS {
        out[i] = a[i].wrapping_add(b[i]);
    }
    out
}

/// Cyclic left rotation of the 768-bit block by `words` 64-bit words
/// (ω = 64·words bits over the little-endian bit string).
fn rotate_left_words(block: &RateBlock, words: usize) -> RateBlock {
    let mut out = ZERO_BLOCK;
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = block[(i + RATE_WORDS - words) % RATE_WORDS];
    }
    out
}

/// Builds the two 512-bit bootstrap blocks: `pwd ‖ pwd` and the padded
/// parameter block `len(K) ‖ len(pwd) ‖ len(salt) ‖ T ‖ R ‖ C` (64-bit
/// little-endian words, lengths in bytes, salt = pwd). The padding puts
/// 0x80 right after the parameters and 0x01 in the final byte.
fn bootstrap_blocks(pwd: &[u8; INPUT_BYTES], params: &Lyra2Params) -> [[u64; 8]; 2] {
    let mut bytes = [0u8; 128];
    bytes[..32].copy_from_slice(pwd);
    bytes[32..64].copy_from_slice(pwd);
    let fields = [
        params.output_len as u64,
        INPUT_BYTES as u64,
        INPUT_BYTES as u64,
        params.time_cost,
        params.rows as u64,
        params.cols as u64,
    ];
    for (i, f) in fields.iter().enumerate() {
        bytes[64 + i * 8..72 + i * 8].copy_from_slice(&f.to_le_bytes());
    }
    bytes[112] = 0x80;
    bytes[127] ^= 0x01;

    let mut blocks = [[0u64; 8]; 2];
    for (b, chunk) in blocks.iter_mut().zip(bytes.chunks(64)) {
        for (w, wb) in b.iter_mut().zip(chunk.chunks(8)) {
            *w = u64::from_le_bytes(wb.try_into().unwrap());
        }
    }
    blocks
}

/// Bootstrap phase: two full-round 512-bit absorbs over a fresh sponge.
pub fn bootstrap(pwd: &[u8; INPUT_BYTES], params: &Lyra2Params) -> DuplexSponge {
    let mut sponge = DuplexSponge::new();
    for block in bootstrap_blocks(pwd, params) {
        sponge.absorb_bootstrap_block(&block);
    }
    sponge
}

/// Setup phase: fills all R rows with reduced-round duplexing, revisiting
/// earlier rows from the third row onward. Returns the index of the last
/// row written (the wandering phase's initial `prev0`).
pub fn setup(
    sponge: &mut DuplexSponge,
    matrix: &mut MemoryMatrix,
    params: &Lyra2Params,
    mut trace: Option<&mut TraceHook<'_>>,
) -> usize {
    let cols = params.cols;
    let omega = params.omega_words();

    // Row 0: plain squeezes, columns written last to first.
    for col in 0..cols {
        let rand = sponge.reduced_squeeze();
        matrix.set(0, cols - 1 - col, rand);
        if let Some(hook) = trace.as_deref_mut() {
            hook(TraceEvent {
                phase: Phase::Setup0,
                row0: 0,
                row1: None,
                col,
                instance: None,
                rand: &rand,
            });
        }
    }

    // Row 1: duplex of row 0, output XOR'd with the input cell.
    for col in 0..cols {
        let input = *matrix.cell(0, col);
        let rand = sponge.reduced_duplex(&input);
        let mut out = input;
        for (w, r) in out.iter_mut().zip(&rand) {
            *w ^= r;
        }
        matrix.set(1, cols - 1 - col, out);
        if let Some(hook) = trace.as_deref_mut() {
            hook(TraceEvent {
                phase: Phase::Setup1,
                row0: 1,
                row1: None,
                col,
                instance: None,
                rand: &rand,
            });
        }
    }

    // Remaining rows: duplex of M[row1] ⊞ M[prev0], writing the new row
    // backwards and updating the revisited row with the rotated output.
    // The revisitation window doubles as in the reference scheme; for R=4
    // it reduces to row1 = row0 - 2.
    let mut row = 2usize;
    let mut prev = 1usize;
    let mut rowa = 0usize;
    let mut step = 1i64;
    let mut window = 2u64;
    let mut gap = 1i64;
    while row < params.rows {
        for col in 0..cols {
            let input = add_blocks(matrix.cell(rowa, col), matrix.cell(prev, col));
            let rand = sponge.reduced_duplex(&input);
            let mut out = *matrix.cell(prev, col);
            for (w, r) in out.iter_mut().zip(&rand) {
                *w ^= r;
            }
            matrix.set(row, cols - 1 - col, out);
            matrix.xor(rowa, col, &rotate_left_words(&rand, omega));
            if let Some(hook) = trace.as_deref_mut() {
                hook(TraceEvent {
                    phase: Phase::Setup2,
                    row0: row,
                    row1: Some(rowa),
                    col,
                    instance: None,
                    rand: &rand,
                });
            }
        }
        rowa = (rowa as i64 + step) as usize & (window - 1) as usize;
        prev = row;
        row += 1;
        if rowa == 0 {
            step = window as i64 + gap;
            window *= 2;
            gap = -gap;
        }
    }
    prev
}

/// Selects the pseudorandom row for one wandering iteration.
///
/// Rev2 reads the least-significant 64-bit word of the last duplex output
/// (state word 0). Mod first updates the 4-bit `instance` selector from
/// state word `instance`, then reads the row from state word `instance`;
/// both reads are zero-round raw-state reads.
pub fn select_row1(
    sponge: &DuplexSponge,
    instance: &mut u8,
    variant: Lyra2Variant,
    rows: usize,
) -> usize {
    let raw = sponge.squeeze_raw();
    match variant {
        Lyra2Variant::Rev2 => (raw[0] % rows as u64) as usize,
        Lyra2Variant::Mod => {
            *instance = (raw[*instance as usize] & 0xf) as u8;
            (raw[*instance as usize] % rows as u64) as usize
        }
    }
}

/// Wandering phase. Returns the last pseudorandom row index, which the
/// wrap-up phase absorbs.
pub fn wandering(
    sponge: &mut DuplexSponge,
    matrix: &mut MemoryMatrix,
    params: &Lyra2Params,
    variant: Lyra2Variant,
    mut prev: usize,
    mut trace: Option<&mut TraceHook<'_>>,
) -> usize {
    let rows = params.rows as i64;
    let cols = params.cols;
    let omega = params.omega_words();
    let mut instance: u8 = 0;
    let mut rowa = 0usize;
    let mut row = 0i64;
    for tau in 1..=params.time_cost {
        let step = if tau % 2 == 0 { -1 } else { rows / 2 - 1 };
        loop {
            rowa = select_row1(sponge, &mut instance, variant, params.rows);
            let row0 = row as usize;
            for col in 0..cols {
                let input = add_blocks(matrix.cell(rowa, col), matrix.cell(prev, col));
                let rand = sponge.reduced_duplex(&input);
                // Sequential XOR updates: when row0 == rowa the second
                // update applies on top of the first, so the cell nets
                // rand ^ rot(rand).
                matrix.xor(row0, col, &rand);
                matrix.xor(rowa, col, &rotate_left_words(&rand, omega));
                if let Some(hook) = trace.as_deref_mut() {
                    hook(TraceEvent {
                        phase: Phase::Wandering,
                        row0,
                        row1: Some(rowa),
                        col,
                        instance: matches!(variant, Lyra2Variant::Mod).then_some(instance),
                        rand: &rand,
                    });
                }
            }
            prev = row0;
            row = (row + step).rem_euclid(rows);
            if row == 0 {
                break;
            }
        }
    }
    rowa
}

/// Wrap-up phase: one full-round absorb of `M[row1][0]`, then the output is
/// read directly from the rate (k ≤ b needs no further permutation).
pub fn wrap_up(sponge: &mut DuplexSponge, matrix: &MemoryMatrix, last_row1: usize, out: &mut [u8]) {
    sponge.absorb_rate_block(matrix.cell(last_row1, 0));
    sponge.read_rate_bytes(out);
}

fn hash_impl(
    pwd: &[u8; INPUT_BYTES],
    params: &Lyra2Params,
    variant: Lyra2Variant,
    trace: Option<&mut TraceHook<'_>>,
    out: &mut [u8],
) {
    let mut sponge = bootstrap(pwd, params);
    let mut matrix = MemoryMatrix::new(params.rows, params.cols);
    let mut trace = trace;
    let prev = setup(&mut sponge, &mut matrix, params, trace.as_deref_mut());
    let last = wandering(&mut sponge, &mut matrix, params, variant, prev, trace);
    wrap_up(&mut sponge, &matrix, last, out);
}

/// Hashes a 256-bit input with explicit parameters, returning the k-byte
/// output. Parameters are validated before any computation.
pub fn lyra2_hash(
    pwd: &[u8; INPUT_BYTES],
    params: &Lyra2Params,
    variant: Lyra2Variant,
) -> Result<Vec<u8>, Lyra2ParamsError> {
    params.validate()?;
    let mut out = vec![0u8; params.output_len];
    hash_impl(pwd, params, variant, None, &mut out);
    Ok(out)
}

/// Hashes with the chain's default parameters (T=1, R=C=4, 256-bit output).
pub fn lyra2_hash_256(pwd: &[u8; INPUT_BYTES], variant: Lyra2Variant) -> [u8; 32] {
    let params = Lyra2Params::default();
    let mut out = [0u8; 32];
    hash_impl(pwd, &params, variant, None, &mut out);
    out
}

/// Like [`lyra2_hash`], with a trace hook receiving every reduced duplex
/// step for differential debugging.
pub fn lyra2_hash_traced(
    pwd: &[u8; INPUT_BYTES],
    params: &Lyra2Params,
    variant: Lyra2Variant,
    trace: &mut TraceHook<'_>,
) -> Result<Vec<u8>, Lyra2ParamsError> {
    params.validate()?;
    let mut out = vec![0u8; params.output_len];
    hash_impl(pwd, params, variant, Some(trace), &mut out);
    Ok(out)
}
