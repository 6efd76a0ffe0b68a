//! Process-wide memo of form-space contexts, one build per (arity, degree).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use exact_linalg::Exec;

use crate::{ArnoldContext, ModuliError, RelationContext};

/// Largest monomial space the relation engine will build.
pub const DEFAULT_MONOMIAL_CAP: usize = 200_000;

type Slot<T> = Arc<OnceLock<Result<Arc<T>, ModuliError>>>;

struct Memo<T> {
    slots: Mutex<HashMap<(usize, usize), Slot<T>>>,
}

impl<T> Memo<T> {
    fn new() -> Self {
        Memo { slots: Mutex::new(HashMap::new()) }
    }

    // The map lock is held only to fetch the slot; the slot's OnceLock makes
    // concurrent callers for the same key wait on a single build.
    fn get(&self, key: (usize, usize), build: impl FnOnce() -> Result<T, ModuliError>) -> Result<Arc<T>, ModuliError> {
        let slot = self.slots.lock().unwrap().entry(key).or_default().clone();
        slot.get_or_init(|| build().map(Arc::new)).clone()
    }
}

fn arnold_memo() -> &'static Memo<ArnoldContext> {
    static M: OnceLock<Memo<ArnoldContext>> = OnceLock::new();
    M.get_or_init(Memo::new)
}

fn relation_memo() -> &'static Memo<RelationContext> {
    static M: OnceLock<Memo<RelationContext>> = OnceLock::new();
    M.get_or_init(Memo::new)
}

pub fn arnold_context(n: usize, degree: usize) -> Result<Arc<ArnoldContext>, ModuliError> {
    arnold_memo().get((n, degree), || ArnoldContext::build(n, degree, Exec::default()))
}

pub fn relation_context(n: usize, degree: usize) -> Result<Arc<RelationContext>, ModuliError> {
    relation_memo().get((n, degree), || RelationContext::build(n, degree, DEFAULT_MONOMIAL_CAP))
}
