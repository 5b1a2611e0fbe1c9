//! Document-parallel execution with results delivered in input order.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;
use rayon::ThreadPool;

use crate::CliError;

/// Records handed to the pool at a time. Each batch is mapped in parallel
/// and drained in order before the next one is read.
pub const BATCH: usize = 256;

pub fn thread_pool(threads: usize) -> Result<ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| CliError::new("threads", e.to_string()))
}

/// Apply `f` to every item on `pool` and pass the results to `sink` in the
/// order the items arrived. The first `Err` from `items` or `sink` stops
/// the run.
pub fn ordered_map<I, T, R, F, S>(pool: &ThreadPool, items: I, f: F, mut sink: S) -> Result<(), CliError>
where
    I: IntoIterator<Item = Result<T, CliError>>,
    T: Send,
    R: Send,
    F: Fn(T) -> R + Sync,
    S: FnMut(R) -> Result<(), CliError>,
{
    let mut items = items.into_iter();
    loop {
        let mut batch = Vec::with_capacity(BATCH);
        for item in items.by_ref().take(BATCH) {
            batch.push(item?);
        }
        if batch.is_empty() {
            return Ok(());
        }
        let done: Vec<R> = pool.install(|| batch.into_par_iter().map(&f).collect());
        for r in done {
            sink(r)?;
        }
    }
}

/// Buffered writer to `path`, or to standard output when there is none.
pub fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| CliError::new("io", format!("{}: {e}", p.display())))?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_kept_across_batches_and_threads() {
        let n = BATCH * 3 + 7;
        for threads in [1, 4] {
            let pool = thread_pool(threads).unwrap();
            let mut got = Vec::new();
            ordered_map(&pool, (0..n).map(Ok), |x| x * 2, |r| {
                got.push(r);
                Ok(())
            })
            .unwrap();
            assert_eq!(got, (0..n).map(|x| x * 2).collect::<Vec<_>>());
        }
    }

    #[test]
    fn input_error_stops_the_run() {
        let pool = thread_pool(2).unwrap();
        let items = vec![Ok(1), Err(CliError::new("x", "y")), Ok(3)];
        let mut seen = 0;
        let r = ordered_map(&pool, items, |x: i32| x, |_| {
            seen += 1;
            Ok(())
        });
        assert_eq!(r.unwrap_err().kind, "x");
        assert_eq!(seen, 0);
    }

    #[test]
    fn empty_input() {
        let pool = thread_pool(1).unwrap();
        ordered_map(&pool, Vec::<Result<u8, CliError>>::new(), |x| x, |_| panic!("no items")).unwrap();
    }
}
