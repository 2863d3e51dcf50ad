//! A prefix stream that several threads can read while it grows.

use std::sync::{Arc, PoisonError, RwLock};

use pisot_core::words::PrefixStream;
use pisot_core::{Alphabet, Letter, Word};

/// Clonable handle to one lazily extended sequence. Readers share the cache
/// under a read lock; only a request past the cached length takes the write
/// lock to extend it.
#[derive(Clone)]
pub struct SharedPrefixStream {
    alphabet: Alphabet,
    inner: Arc<RwLock<PrefixStream>>,
}

impl SharedPrefixStream {
    pub fn new(stream: PrefixStream) -> Self {
        SharedPrefixStream { alphabet: stream.alphabet().clone(), inner: Arc::new(RwLock::new(stream)) }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn cached_len(&self) -> usize {
        self.inner.read().unwrap_or_else(PoisonError::into_inner).cached_len()
    }

    /// The first `len` letters; identical for every caller.
    pub fn prefix(&self, len: usize) -> Word {
        {
            let guard = self.inner.read().unwrap_or_else(PoisonError::into_inner);
            if guard.cached_len() >= len {
                return Word::new(&self.alphabet, guard.cached()[..len].to_vec()).expect("cached letters are valid");
            }
        }
        self.inner.write().unwrap_or_else(PoisonError::into_inner).prefix(len)
    }

    pub fn letter(&self, index: usize) -> Letter {
        {
            let guard = self.inner.read().unwrap_or_else(PoisonError::into_inner);
            if let Some(&l) = guard.cached().get(index) {
                return l;
            }
        }
        self.inner.write().unwrap_or_else(PoisonError::into_inner).letter(index)
    }
}
