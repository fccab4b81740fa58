//! Thread fan-out over the linear-coefficient branches of the searches.
//! Results are merged in branch order, so output does not depend on `jobs`.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::thread;

use budlaw_core::honda::{assemble_endos, enumerate_endos_branch, EndoSet, HondaLaw};
use budlaw_core::isomorphy::{check_height, extension_tower, IsoResult, IsoSearch};
use budlaw_core::{honda, BudLaw, Result, Ring};

/// Runs `work` on every index in `0..count` using up to `jobs` threads and
/// returns the results in index order.
pub fn map_indexed<T: Send>(count: usize, jobs: usize, work: impl Fn(usize) -> T + Sync) -> Vec<T> {
    let jobs = jobs.clamp(1, count.max(1));
    if jobs == 1 {
        return (0..count).map(work).collect();
    }
    let next = AtomicUsize::new(0);
    let mut slots: Vec<Option<T>> = (0..count).map(|_| None).collect();
    let done: Vec<Vec<(usize, T)>> = thread::scope(|s| {
        let handles: Vec<_> = (0..jobs)
            .map(|_| {
                s.spawn(|| {
                    let mut out = Vec::new();
                    loop {
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        if i >= count {
                            break out;
                        }
                        out.push((i, work(i)));
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    for (i, v) in done.into_iter().flatten() {
        slots[i] = Some(v);
    }
    slots.into_iter().map(|v| v.expect("every index visited")).collect()
}

pub fn enumerate_endos(hl: &HondaLaw, field: &Ring, jobs: usize) -> Result<EndoSet> {
    let q = field.order().ok_or_else(|| budlaw_core::Error::InvalidArgument("expected a finite field".into()))?;
    hl.over(field)?;
    let parts = map_indexed(q as usize, jobs, |a| enumerate_endos_branch(hl, field, a as u32));
    Ok(assemble_endos(hl, field, parts.into_iter().collect::<Result<Vec<_>>>()?))
}

/// The first isomorphism in canonical order; branches past a known success
/// are skipped.
pub fn find_iso(x: &BudLaw, y: &BudLaw, field: &Ring, jobs: usize) -> Result<IsoResult> {
    let search = IsoSearch::new(x, y, field)?;
    let choices: Vec<u32> = search.linear_choices().collect();
    let best = AtomicUsize::new(usize::MAX);
    let found = map_indexed(choices.len(), jobs, |i| {
        if i > best.load(Ordering::Relaxed) {
            return Ok(None);
        }
        let r = search.branch(choices[i])?;
        if r.is_some() {
            best.fetch_min(i, Ordering::Relaxed);
        }
        Ok(r)
    });
    let mut first = None;
    for r in found {
        if let Some(f) = r? {
            first = Some(f);
            break;
        }
    }
    search.finish(first)
}

pub fn trivialize_height_h(x: &BudLaw, h: u32, max_ext: Option<u32>, jobs: usize) -> Result<IsoResult> {
    let p = check_height(x, h)?;
    let max_ext = max_ext.unwrap_or_else(|| (p as u32).pow(h));
    let target = honda::honda_law(p, h, x.n())?;
    for field in extension_tower(x.ring(), max_ext)? {
        let res = find_iso(x, &target.law, &field, jobs)?;
        if res.is_found() {
            return Ok(res);
        }
    }
    Ok(IsoResult::Failed("BoundExceeded".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use budlaw_core::isomorphy;

    #[test]
    fn indexed_map_keeps_order() {
        let v = map_indexed(50, 4, |i| i * i);
        assert_eq!(v, (0..50).map(|i| i * i).collect::<Vec<_>>());
        assert!(map_indexed(0, 3, |i| i).is_empty());
    }

    #[test]
    fn parallel_enumeration_matches_sequential() {
        let hl = honda::honda_law(2, 2, 4).unwrap();
        let f4 = Ring::finite_field(2, 2).unwrap();
        let seq = honda::enumerate_endos(&hl, &f4).unwrap();
        let par = enumerate_endos(&hl, &f4, 3).unwrap();
        assert_eq!(seq.dense(), par.dense());
    }

    #[test]
    fn parallel_search_returns_the_canonical_first() {
        let f4 = Ring::finite_field(2, 2).unwrap();
        let h = honda::honda_law(2, 1, 4).unwrap().law.change_ring(&f4).unwrap();
        let m = BudLaw::multiplicative(&f4, 4);
        for jobs in [1, 2, 3] {
            assert_eq!(find_iso(&m, &h, &f4, jobs).unwrap(), isomorphy::find_iso(&m, &h, &f4).unwrap());
        }
    }
}
