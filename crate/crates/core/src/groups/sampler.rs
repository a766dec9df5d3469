//! Deterministic random words in the integral paramodular group.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    exclusion_identity, exclusion_unipotent, h1, h2, is_member, make_kappa, make_wtilde, Element,
    GroupId, GroupKind,
};
use crate::error::{Error, Result};
use crate::exact::{Prime, ScaledMatrix, SymplecticForm};
use crate::sp4f2::{enumerate_sp4f2, F2Matrix};

#[derive(Clone, Debug)]
pub struct SamplerConfig {
    pub seed: u64,
    pub word_length: usize,
    pub generators: Vec<ScaledMatrix>,
}

impl SamplerConfig {
    pub fn new(p: Prime, seed: u64, word_length: usize) -> Self {
        SamplerConfig {
            seed,
            word_length,
            generators: default_generators(p),
        }
    }
}

fn unit(n: usize, i: usize, j: usize, v: i64) -> [[i64; 4]; 4] {
    let mut m = [[0i64; 4]; 4];
    for (k, row) in m.iter_mut().enumerate().take(n) {
        row[k] = 1;
    }
    m[i][j] += v;
    m
}

/// Elementary unipotents compatible with `Lambda_p`, the two embedded `SL_2`
/// rotations, `h1`, `h2` and the two exclusion matrices.
pub fn default_generators(p: Prime) -> Vec<ScaledMatrix> {
    let q = p.as_i64();
    let mut upper_mixed = unit(4, 0, 3, 1);
    upper_mixed[1][2] = q;
    let mut lower_mixed = unit(4, 2, 1, 1);
    lower_mixed[3][0] = q;
    let mut rot1 = unit(4, 0, 2, 1);
    rot1[0][0] = 0;
    rot1[2][2] = 0;
    rot1[2][0] = -1;
    let mut rot2 = unit(4, 1, 3, 1);
    rot2[1][1] = 0;
    rot2[3][3] = 0;
    rot2[3][1] = -1;
    let mut gens: Vec<ScaledMatrix> = [
        unit(4, 0, 2, 1),
        upper_mixed,
        unit(4, 1, 3, 1),
        unit(4, 2, 0, 1),
        lower_mixed,
        unit(4, 3, 1, 1),
        rot1,
        rot2,
    ]
    .into_iter()
    .map(|rows| ScaledMatrix::from_rows(p, rows))
    .collect();
    gens.extend([h1(p), h2(p), exclusion_identity(p), exclusion_unipotent(p)]);
    gens
}

/// Seeded sampler over words in a generator set and its inverses.
#[derive(Clone, Debug)]
pub struct Sampler {
    p: Prime,
    word_length: usize,
    gens: Vec<ScaledMatrix>,
    inverses: Vec<ScaledMatrix>,
    corrections: Vec<Option<Vec<usize>>>,
    f2_index: Vec<u16>,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(cfg: &SamplerConfig) -> Result<Self> {
        let p = cfg
            .generators
            .first()
            .map(|g| g.p())
            .ok_or(Error::GeneratorInvalid { index: 0 })?;
        let group = GroupId::tilde(GroupKind::GammaCircle, p);
        let mut inverses = Vec::with_capacity(cfg.generators.len());
        for (index, g) in cfg.generators.iter().enumerate() {
            if g.p() != p || !is_member(&Element::Tilde(g.clone()), group)? {
                return Err(Error::GeneratorInvalid { index });
            }
            inverses.push(g.symplectic_inverse(SymplecticForm::LambdaP(p))?);
        }
        let table = enumerate_sp4f2();
        let images: Vec<F2Matrix> = cfg.generators.iter().map(|g| g.mod2()).collect::<Result<_>>()?;
        let corrections = table.word_table(&images);
        let mut f2_index = vec![u16::MAX; 1 << 16];
        for (k, m) in table.elements().iter().enumerate() {
            f2_index[m.bits() as usize] = k as u16;
        }
        Ok(Sampler {
            p,
            word_length: cfg.word_length,
            gens: cfg.generators.clone(),
            inverses,
            corrections,
            f2_index,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
        })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn generators(&self) -> &[ScaledMatrix] {
        &self.gens
    }

    /// A random word of the given length.
    pub fn word(&mut self, len: usize) -> ScaledMatrix {
        let mut g = ScaledMatrix::identity(self.p);
        for _ in 0..len {
            let i = self.rng.gen_range(0..self.gens.len());
            let letter = if self.rng.gen_bool(0.5) {
                &self.gens[i]
            } else {
                &self.inverses[i]
            };
            g = g.mul(letter).expect("integral product");
        }
        g
    }

    pub fn gamma_circle(&mut self) -> ScaledMatrix {
        self.word(self.word_length)
    }

    /// Multiplies `g` on the right by a word in the generators reducing to
    /// `pi(g)^-1`, or falls back to a power of `g` if no such word exists.
    pub fn correct_to_level2(&self, g: &ScaledMatrix) -> ScaledMatrix {
        let image = g.mod2().expect("integral");
        let target = image.symplectic_inverse();
        let k = self.f2_index[target.bits() as usize];
        match self.corrections.get(k as usize).and_then(|w| w.as_ref()) {
            Some(word) => word
                .iter()
                .fold(g.clone(), |acc, &i| acc.mul(&self.gens[i]).expect("integral product")),
            None => {
                let mut order = 1;
                let mut x = image;
                while x != F2Matrix::IDENTITY {
                    x = x.mul(image);
                    order += 1;
                }
                g.pow(order).expect("integral product")
            }
        }
    }

    pub fn gamma_circle_level2(&mut self) -> ScaledMatrix {
        let g = self.gamma_circle();
        self.correct_to_level2(&g)
    }

    /// An element of the Fricke extension, in either coset with equal odds.
    pub fn gamma_star(&mut self) -> ScaledMatrix {
        let g = self.gamma_circle();
        if self.rng.gen_bool(0.5) {
            make_wtilde(self.p).mul(&g).expect("group product")
        } else {
            g
        }
    }

    /// An element of the kernel of `pi*`, in either coset with equal odds.
    pub fn gamma_star_level2(&mut self) -> ScaledMatrix {
        let g = self.gamma_circle_level2();
        if self.rng.gen_bool(0.5) {
            let h = self.gamma_circle_level2();
            g.mul(&make_kappa(self.p)).and_then(|x| x.mul(&h)).expect("group product")
        } else {
            g
        }
    }

    pub fn sample(&mut self, kind: GroupKind) -> ScaledMatrix {
        match kind {
            GroupKind::GammaCircle => self.gamma_circle(),
            GroupKind::GammaCircleLevel2 => self.gamma_circle_level2(),
            GroupKind::GammaStar => self.gamma_star(),
            GroupKind::GammaStarLevel2 => self.gamma_star_level2(),
        }
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }
}
