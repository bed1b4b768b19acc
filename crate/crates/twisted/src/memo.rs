use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

/// Concurrent memo table: each key is built at most once; a failed build
/// leaves the slot empty.
pub(crate) struct Memo<K, V> {
    slots: Mutex<HashMap<K, Arc<Mutex<Option<Arc<V>>>>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub fn new() -> Self {
        Memo { slots: Mutex::new(HashMap::new()) }
    }

    pub fn get_or_try<E>(&self, key: &K, build: impl FnOnce() -> Result<V, E>) -> Result<Arc<V>, E> {
        let slot = self.slots.lock().expect("memo lock").entry(key.clone()).or_default().clone();
        let mut guard = slot.lock().expect("slot lock");
        if let Some(v) = guard.as_ref() {
            return Ok(v.clone());
        }
        let v = Arc::new(build()?);
        *guard = Some(v.clone());
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.slots.lock().expect("memo lock").values().filter(|s| s.lock().expect("slot lock").is_some()).count()
    }
}
