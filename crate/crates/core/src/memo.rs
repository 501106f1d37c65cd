use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, Mutex, OnceLock};

/// Process-wide memo table. The value is built outside the lock, so builders may
/// themselves consult other memo tables.
pub(crate) struct Memo<K, V> {
    map: OnceLock<Mutex<HashMap<K, Arc<V>>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub(crate) const fn new() -> Self {
        Memo { map: OnceLock::new() }
    }

    pub(crate) fn get_or_build(&self, key: &K, build: impl FnOnce() -> V) -> Arc<V> {
        let map = self.map.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(v) = map.lock().expect("memo lock poisoned").get(key) {
            return v.clone();
        }
        let built = Arc::new(build());
        map.lock().expect("memo lock poisoned").entry(key.clone()).or_insert(built).clone()
    }
}
