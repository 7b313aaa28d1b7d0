//! Shared memo tables. Reads take a read lock; a miss computes outside the
//! lock and inserts under the write lock, so concurrent callers may compute
//! the same entry twice but always observe identical values.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, RwLock};

pub(crate) struct Memo<K, V> {
    map: RwLock<HashMap<K, Arc<V>>>,
    capacity: usize,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub(crate) fn new(capacity: usize) -> Self {
        Memo { map: RwLock::new(HashMap::new()), capacity }
    }

    pub(crate) fn get_or_insert_with(&self, key: &K, compute: impl FnOnce() -> V) -> Arc<V> {
        if let Some(v) = self.map.read().unwrap().get(key) {
            return v.clone();
        }
        let value = Arc::new(compute());
        let mut map = self.map.write().unwrap();
        if map.len() >= self.capacity {
            map.clear();
        }
        map.entry(key.clone()).or_insert(value).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn concurrent_readers_see_one_value() {
        let memo: Arc<Memo<u32, u64>> = Arc::new(Memo::new(4));
        let handles: Vec<_> = (0..8)
            .map(|i| {
                let memo = memo.clone();
                std::thread::spawn(move || *memo.get_or_insert_with(&(i % 3), || (i % 3) as u64 * 10))
            })
            .collect();
        for (i, h) in handles.into_iter().enumerate() {
            assert_eq!(h.join().unwrap(), (i % 3) as u64 * 10);
        }
    }

    #[test]
    fn eviction_keeps_values_correct() {
        let memo: Memo<u32, u32> = Memo::new(2);
        for i in 0..10 {
            assert_eq!(*memo.get_or_insert_with(&i, || i * i), i * i);
        }
    }
}
