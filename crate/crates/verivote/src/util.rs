//! Small shared helpers.

use crate::error::Result;

/// Map a fallible function over items with up to `workers` threads,
/// returning results in input order. `workers <= 1` runs inline and stops at
/// the first error; parallel runs surface the earliest-indexed error.
pub fn try_par_map<T, R, F>(items: &[T], workers: usize, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync,
{
    if workers <= 1 || items.len() <= 1 {
        return items.iter().map(&f).collect();
    }
    let next = std::sync::atomic::AtomicUsize::new(0);
    let slots: Vec<std::sync::Mutex<Option<Result<R>>>> =
        items.iter().map(|_| std::sync::Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers.min(items.len()) {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                if index >= items.len() {
                    break;
                }
                let result = f(&items[index]);
                *slots[index].lock().unwrap() = Some(result);
            });
        }
    });
    let mut out = Vec::with_capacity(items.len());
    for slot in slots {
        let result = slot
            .into_inner()
            .unwrap()
            .expect("every index was processed");
        out.push(result?);
    }
    Ok(out)
}
