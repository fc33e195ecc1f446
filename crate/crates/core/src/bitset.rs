//! Fixed-length bitmap over `0..len` stored in 64-bit words.

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bitmap {
    words: Vec<u64>,
    len: usize,
}

impl Bitmap {
    pub fn new(len: usize) -> Self {
        Bitmap {
            words: vec![0; len.div_ceil(WORD)],
            len,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.len && (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `self |= other << shift`, dropping bits that land at or past `len`.
    pub fn or_shifted(&mut self, other: &Bitmap, shift: usize) {
        let word_shift = shift / WORD;
        let bit_shift = shift % WORD;
        for (i, &w) in other.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let lo = i + word_shift;
            if lo >= self.words.len() {
                break;
            }
            self.words[lo] |= w << bit_shift;
            if bit_shift != 0 && lo + 1 < self.words.len() {
                self.words[lo + 1] |= w >> (WORD - bit_shift);
            }
        }
        self.clear_tail();
    }

    fn clear_tail(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * WORD + t)
            })
        })
    }
}

impl std::fmt::Debug for Bitmap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter_ones()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_or_across_word_boundary() {
        let mut a = Bitmap::new(200);
        a.set(0);
        a.set(63);
        let mut b = Bitmap::new(200);
        b.or_shifted(&a, 70);
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![70, 133]);
        b.or_shifted(&a, 137);
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![70, 133, 137]);
        assert_eq!(b.count_ones(), 3);
    }

    #[test]
    fn truncates_past_len() {
        let mut a = Bitmap::new(10);
        a.set(9);
        let mut b = Bitmap::new(10);
        b.or_shifted(&a, 1);
        assert!(b.iter_ones().next().is_none());
        assert!(!b.get(10));
    }
}
