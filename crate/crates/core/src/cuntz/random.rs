use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::permmap::{pm_canonicalize, PermMap};
use super::poly::PolyElement;
use crate::lang::{words_up_to, Word};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word<R: Rng>(rng: &mut R, alphabet: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::new((0..len).map(|_| rng.gen_range(0..alphabet as u32)).collect())
}

pub fn random_poly<R: Rng>(rng: &mut R, alphabet: usize, max_len: usize) -> PolyElement {
    if rng.gen_bool(0.1) {
        PolyElement::Zero
    } else {
        PolyElement::Pair(random_word(rng, alphabet, max_len), random_word(rng, alphabet, max_len))
    }
}

/// Leaves of a random complete prefix code grown by splitting leaves, with
/// at least `min_leaves` leaves when depth allows.
fn random_leaves<R: Rng>(rng: &mut R, alphabet: usize, max_len: usize, min_leaves: usize) -> Vec<Word> {
    let mut leaves = vec![Word::empty()];
    let splits = rng.gen_range(0..=3);
    let mut done = 0;
    loop {
        let splittable: Vec<usize> = (0..leaves.len()).filter(|&i| leaves[i].len() < max_len).collect();
        if splittable.is_empty() || (done >= splits && leaves.len() >= min_leaves) {
            break;
        }
        let w = leaves.swap_remove(*splittable.choose(rng).unwrap());
        leaves.extend((0..alphabet as u32).map(|a| w.child(a)));
        done += 1;
    }
    leaves
}

/// A random canonical map whose raw description uses words of length at
/// most `max_len`: a table between random prefix codes plus a small
/// injection on finitely many points outside both cones.
pub fn random_perm_map<R: Rng>(rng: &mut R, alphabet: usize, max_len: usize) -> PermMap {
    let mut dom: Vec<Word> = random_leaves(rng, alphabet, max_len, 0)
        .into_iter()
        .filter(|_| rng.gen_bool(0.6))
        .collect();
    let mut cod = random_leaves(rng, alphabet, max_len, dom.len());
    cod.shuffle(rng);
    cod.truncate(dom.len());
    dom.truncate(cod.len());
    let table: Vec<(Word, Word)> = dom.iter().cloned().zip(cod.iter().cloned()).collect();

    let outside = |code: &[Word]| -> Vec<Word> {
        words_up_to(alphabet, max_len)
            .into_iter()
            .filter(|w| !code.iter().any(|y| y.is_prefix_of(w)))
            .collect()
    };
    let mut free_dom = outside(&dom);
    let mut free_cod = outside(&cod);
    free_dom.shuffle(rng);
    free_cod.shuffle(rng);
    let k = rng.gen_range(0..=3).min(free_dom.len()).min(free_cod.len());
    let finite: Vec<(Word, Word)> = free_dom.into_iter().zip(free_cod).take(k).collect();
    pm_canonicalize(alphabet, &finite, &table).expect("disjoint pieces form a partial bijection")
}

pub fn random_perm_maps(seed: u64, alphabet: usize, max_len: usize, count: usize) -> Vec<PermMap> {
    let mut rng = seeded_rng(seed);
    (0..count).map(|_| random_perm_map(&mut rng, alphabet, max_len)).collect()
}
