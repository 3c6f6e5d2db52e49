//! Closed-form area generating functions via column-wise functional
//! equations.
//!
//! For each family the series is refined by catalytic variables describing
//! the last column: `t` for its height, and for a column split by a hole,
//! `u` and `v` for the sizes of its upper and lower run. Appending one
//! column multiplies weights by rational factors, which yields a master
//! equation expressing the refined series in terms of finitely many of its
//! own specializations (values and `t`-derivatives at `t` in `{0, 1}`,
//! `u`, `v` likewise). Applying each specialization recipe to the master
//! equation produces one linear equation per unknown specialization; the
//! resulting square system over rational functions of `q` is solved
//! exactly, and the area generating function is read off the solution.
//!
//! The catalog hardcodes the master equations for the column-convex family
//! and cheese levels 1 and 2. Level 3 needs a far larger system, so its
//! generating function is stored directly and cross-checked against the
//! column-transfer engine by the test suite. [`verify_master`] replays
//! every cataloged master equation against shape-resolved column-transfer
//! counts at random rational points of the catalytic variables, which
//! exercises the transcriptions independently of the solve.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::columndp::{self, ColumnShape};
use crate::exactalg::{
    solve_linear, ExactAlgError, IntPoly, MultiPoly, MultiRat, UniRat, Variable,
};
use crate::hexgrid::FamilySpec;

/// The families with cataloged generating functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GfModel {
    ColumnConvex,
    Level1,
    Level2,
    Level3,
}

impl GfModel {
    pub const ALL: [GfModel; 4] = [
        GfModel::ColumnConvex,
        GfModel::Level1,
        GfModel::Level2,
        GfModel::Level3,
    ];

    /// Hole-size bound of the family; the column-convex family is the
    /// gap-free level 0.
    pub fn level(self) -> u32 {
        match self {
            GfModel::ColumnConvex => 0,
            GfModel::Level1 => 1,
            GfModel::Level2 => 2,
            GfModel::Level3 => 3,
        }
    }

    pub fn family(self) -> FamilySpec {
        match self {
            GfModel::ColumnConvex => FamilySpec::ColumnConvex,
            m => FamilySpec::cheesy(m.level()).unwrap(),
        }
    }

    pub fn from_family(family: FamilySpec) -> Option<GfModel> {
        match family {
            FamilySpec::ColumnConvex => Some(GfModel::ColumnConvex),
            FamilySpec::Cheesy(m) => match m.get() {
                1 => Some(GfModel::Level1),
                2 => Some(GfModel::Level2),
                3 => Some(GfModel::Level3),
                _ => None,
            },
            FamilySpec::All => None,
        }
    }
}

impl std::fmt::Display for GfModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.family())
    }
}

/// A specialization of a refined series that appears as an unknown in some
/// model's linear system. The names follow one fixed scheme: the trailing
/// digit is the evaluation point of the specialized variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unknown {
    A1,
    B1,
    C1,
    D1,
    E1,
    F0,
    F1,
    G1,
    H1,
    I0,
    J0,
}

impl Unknown {
    pub fn name(self) -> &'static str {
        match self {
            Unknown::A1 => "A1",
            Unknown::B1 => "B1",
            Unknown::C1 => "C1",
            Unknown::D1 => "D1",
            Unknown::E1 => "E1",
            Unknown::F0 => "F0",
            Unknown::F1 => "F1",
            Unknown::G1 => "G1",
            Unknown::H1 => "H1",
            Unknown::I0 => "I0",
            Unknown::J0 => "J0",
        }
    }

    /// What the specialization means as a series in `q`.
    pub fn definition(self) -> &'static str {
        match self {
            Unknown::A1 => "column-convex series at t = 1",
            Unknown::B1 => "column-convex series, d/dt at t = 1",
            Unknown::C1 => "level-1 series at t = 1",
            Unknown::D1 => "level-1 series, d/dt at t = 1",
            Unknown::E1 => "level-2 series over last columns with gap <= 1, at t = 1",
            Unknown::F0 => "level-2 series over last columns with gap <= 1, d/dt at t = 0",
            Unknown::F1 => "level-2 series over last columns with gap <= 1, d/dt at t = 1",
            Unknown::G1 => "level-2 series over gap-2 last columns, at t = u = v = 1",
            Unknown::H1 => "level-2 series over gap-2 last columns, d/dt at t = 1",
            Unknown::I0 => "level-2 series over gap-2 last columns, d/du at u = 0",
            Unknown::J0 => "level-2 series over gap-2 last columns, d/dv at v = 0",
        }
    }
}

/// One addend of a master equation: a rational coefficient in `q, t, u, v`
/// times an integer combination of unknowns (empty combination: a constant
/// addend).
pub struct Term {
    pub label: &'static str,
    pub coeff: MultiRat,
    pub unknowns: Vec<(Unknown, i64)>,
}

/// `lhs(q, t[, u, v]) = sum of terms`.
pub struct MasterEquation {
    pub lhs: &'static str,
    pub terms: Vec<Term>,
}

/// How to turn a master equation into one linear relation: apply the steps
/// left to right, upon which the refined left-hand side becomes `target`.
pub struct Recipe {
    pub equation: usize,
    pub steps: Vec<RecipeStep>,
    pub target: Unknown,
}

#[derive(Clone, Copy, Debug)]
pub enum RecipeStep {
    Differentiate(Variable),
    Set(Variable, i64),
}

/// Everything known about one model.
pub struct ModelEntry {
    pub model: GfModel,
    pub masters: Vec<MasterEquation>,
    pub recipes: Vec<Recipe>,
    pub unknowns: Vec<Unknown>,
    /// The unknowns whose sum is the area generating function.
    pub output: Vec<Unknown>,
    /// Stored generating function for models without a cataloged system.
    pub closed_form: Option<UniRat>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TemperleyError {
    #[error("model {0} has no cataloged master equations")]
    NoMasterEquations(GfModel),
    #[error(transparent)]
    Algebra(#[from] ExactAlgError),
}

fn mono(c: i64, exps: [u16; 4]) -> MultiPoly {
    MultiPoly::monomial_int(c, exps)
}

fn qt() -> MultiPoly {
    mono(1, [1, 1, 0, 0])
}

fn one_minus(p: &MultiPoly) -> MultiPoly {
    &MultiPoly::one() - p
}

fn frac(num: MultiPoly, den: MultiPoly) -> MultiRat {
    MultiRat::new(num, den).expect("denominator is a nonzero polynomial")
}

/// `qt / (1 - qt)`: a single run, `t` per cell, placed as a whole column.
fn run_weight() -> MultiRat {
    frac(qt(), one_minus(&qt()))
}

/// `qt / (1 - qt)^2`: a single run with a marked cell, the weight of
/// attaching a new column whose bottom part covers the pivot cell.
fn run_weight_marked() -> MultiRat {
    frac(qt(), one_minus(&qt()).pow(2))
}

/// `q^2 t^3 / (1 - qt)^2`: two runs separated by a one-cell hole, placed
/// against a predecessor counted once per height cell.
fn split_weight() -> MultiRat {
    frac(mono(1, [2, 3, 0, 0]), one_minus(&qt()).pow(2))
}

fn entry(model: GfModel) -> ModelEntry {
    match model {
        GfModel::ColumnConvex => ModelEntry {
            model,
            masters: vec![MasterEquation {
                lhs: "A",
                terms: vec![
                    Term {
                        label: "single_column",
                        coeff: run_weight(),
                        unknowns: vec![],
                    },
                    Term {
                        label: "covering_pivot",
                        coeff: run_weight_marked(),
                        unknowns: vec![(Unknown::A1, 1)],
                    },
                    Term {
                        label: "above_pivot",
                        coeff: run_weight(),
                        unknowns: vec![(Unknown::B1, 1)],
                    },
                ],
            }],
            recipes: vec![
                Recipe {
                    equation: 0,
                    steps: vec![RecipeStep::Set(Variable::T, 1)],
                    target: Unknown::A1,
                },
                Recipe {
                    equation: 0,
                    steps: vec![
                        RecipeStep::Differentiate(Variable::T),
                        RecipeStep::Set(Variable::T, 1),
                    ],
                    target: Unknown::B1,
                },
            ],
            unknowns: vec![Unknown::A1, Unknown::B1],
            output: vec![Unknown::A1],
            closed_form: None,
        },
        GfModel::Level1 => ModelEntry {
            model,
            masters: vec![MasterEquation {
                lhs: "C",
                terms: vec![
                    Term {
                        label: "single_column",
                        coeff: run_weight(),
                        unknowns: vec![],
                    },
                    Term {
                        label: "covering_pivot",
                        coeff: run_weight_marked(),
                        unknowns: vec![(Unknown::C1, 1)],
                    },
                    Term {
                        label: "above_pivot",
                        coeff: run_weight(),
                        unknowns: vec![(Unknown::D1, 1)],
                    },
                    Term {
                        label: "split_column",
                        coeff: split_weight(),
                        unknowns: vec![(Unknown::D1, 1), (Unknown::C1, -1)],
                    },
                ],
            }],
            recipes: vec![
                Recipe {
                    equation: 0,
                    steps: vec![RecipeStep::Set(Variable::T, 1)],
                    target: Unknown::C1,
                },
                Recipe {
                    equation: 0,
                    steps: vec![
                        RecipeStep::Differentiate(Variable::T),
                        RecipeStep::Set(Variable::T, 1),
                    ],
                    target: Unknown::D1,
                },
            ],
            unknowns: vec![Unknown::C1, Unknown::D1],
            output: vec![Unknown::C1],
            closed_form: None,
        },
        GfModel::Level2 => level2_entry(),
        GfModel::Level3 => ModelEntry {
            model,
            masters: vec![],
            recipes: vec![],
            unknowns: vec![],
            output: vec![],
            closed_form: Some(level3_closed_form()),
        },
    }
}

fn level2_entry() -> ModelEntry {
    // Weights special to gap-2 attachment. `u` and `v` mark the upper and
    // lower run of a split column; a fresh gap-2 column contributes
    // q^2 t^4 u v for its two runs and the two hole cells' worth of height.
    let quv_core = mono(1, [2, 4, 1, 1]);
    let den_u = one_minus(&mono(1, [1, 1, 1, 0]));
    let den_v = one_minus(&mono(1, [1, 1, 0, 1]));
    let w_both = frac(quv_core.clone(), &den_u * &den_v);
    let p_upper = frac(quv_core.clone(), den_u);
    let p_lower = frac(quv_core, den_v);

    ModelEntry {
        model: GfModel::Level2,
        masters: vec![
            MasterEquation {
                lhs: "E",
                terms: vec![
                    Term {
                        label: "single_column",
                        coeff: run_weight(),
                        unknowns: vec![],
                    },
                    Term {
                        label: "solid_predecessor_covering_pivot",
                        coeff: run_weight_marked(),
                        unknowns: vec![(Unknown::E1, 1)],
                    },
                    Term {
                        label: "solid_predecessor_above_pivot",
                        coeff: run_weight(),
                        unknowns: vec![(Unknown::F1, 1)],
                    },
                    Term {
                        label: "solid_predecessor_split_column",
                        coeff: split_weight(),
                        unknowns: vec![(Unknown::F1, 1), (Unknown::E1, -1)],
                    },
                    Term {
                        label: "split_predecessor_covering_pivot",
                        coeff: run_weight_marked(),
                        unknowns: vec![(Unknown::G1, 1)],
                    },
                    Term {
                        label: "split_predecessor_hole_side",
                        coeff: frac(mono(1, [2, 2, 0, 0]), one_minus(&qt())),
                        unknowns: vec![(Unknown::G1, 1)],
                    },
                    Term {
                        label: "split_predecessor_above_pivot",
                        coeff: run_weight(),
                        unknowns: vec![(Unknown::H1, 1), (Unknown::G1, -1)],
                    },
                    Term {
                        label: "split_predecessor_split_column_low",
                        coeff: frac(mono(2, [3, 4, 0, 0]), one_minus(&qt()).pow(2)),
                        unknowns: vec![(Unknown::G1, 1)],
                    },
                    Term {
                        label: "split_predecessor_split_column_high",
                        coeff: split_weight(),
                        unknowns: vec![(Unknown::H1, 1), (Unknown::G1, -3)],
                    },
                ],
            },
            MasterEquation {
                lhs: "G",
                terms: vec![
                    Term {
                        label: "solid_predecessor",
                        coeff: w_both.clone(),
                        unknowns: vec![
                            (Unknown::F1, 1),
                            (Unknown::E1, -2),
                            (Unknown::F0, 1),
                        ],
                    },
                    Term {
                        label: "split_predecessor",
                        coeff: w_both,
                        unknowns: vec![(Unknown::H1, 1), (Unknown::G1, -2)],
                    },
                    Term {
                        label: "short_upper_run_correction",
                        coeff: -&p_upper,
                        unknowns: vec![(Unknown::G1, 1), (Unknown::I0, -1)],
                    },
                    Term {
                        label: "short_lower_run_correction",
                        coeff: -&p_lower,
                        unknowns: vec![(Unknown::G1, 1), (Unknown::J0, -1)],
                    },
                ],
            },
        ],
        recipes: vec![
            Recipe {
                equation: 0,
                steps: vec![RecipeStep::Set(Variable::T, 1)],
                target: Unknown::E1,
            },
            Recipe {
                equation: 0,
                steps: vec![
                    RecipeStep::Differentiate(Variable::T),
                    RecipeStep::Set(Variable::T, 0),
                ],
                target: Unknown::F0,
            },
            Recipe {
                equation: 0,
                steps: vec![
                    RecipeStep::Differentiate(Variable::T),
                    RecipeStep::Set(Variable::T, 1),
                ],
                target: Unknown::F1,
            },
            Recipe {
                equation: 1,
                steps: vec![
                    RecipeStep::Set(Variable::T, 1),
                    RecipeStep::Set(Variable::U, 1),
                    RecipeStep::Set(Variable::V, 1),
                ],
                target: Unknown::G1,
            },
            Recipe {
                equation: 1,
                steps: vec![
                    RecipeStep::Differentiate(Variable::T),
                    RecipeStep::Set(Variable::T, 1),
                    RecipeStep::Set(Variable::U, 1),
                    RecipeStep::Set(Variable::V, 1),
                ],
                target: Unknown::H1,
            },
            Recipe {
                equation: 1,
                steps: vec![
                    RecipeStep::Differentiate(Variable::U),
                    RecipeStep::Set(Variable::T, 1),
                    RecipeStep::Set(Variable::V, 1),
                    RecipeStep::Set(Variable::U, 0),
                ],
                target: Unknown::I0,
            },
            Recipe {
                equation: 1,
                steps: vec![
                    RecipeStep::Differentiate(Variable::V),
                    RecipeStep::Set(Variable::T, 1),
                    RecipeStep::Set(Variable::U, 1),
                    RecipeStep::Set(Variable::V, 0),
                ],
                target: Unknown::J0,
            },
        ],
        unknowns: vec![
            Unknown::E1,
            Unknown::F0,
            Unknown::F1,
            Unknown::G1,
            Unknown::H1,
            Unknown::I0,
            Unknown::J0,
        ],
        output: vec![Unknown::E1, Unknown::G1],
        closed_form: None,
    }
}

/// Stored area generating function of the level-3 family; deriving it
/// needs a 19-unknown system, far past what the cataloged machinery
/// carries. The test suite checks it coefficient by coefficient against
/// the column-transfer engine.
fn level3_closed_form() -> UniRat {
    let num = IntPoly::from_coeffs([
        0, 1, -11, 49, -114, 146, -94, 5, 71, -143, 176, -154, 100, 24, -121, 90, -61, 19, 58,
        -32, -31, 37, 14, -43, -4, 21, -1, -5,
    ]);
    let den = IntPoly::from_coeffs([
        1, -14, 80, -243, 423, -413, 174, 106, -350, 533, -546, 427, -148, -261, 383, -253, 158,
        57, -181, 10, 115, -49, -96, 93, 49, -54, -12, 12, 1,
    ]);
    UniRat::new(num, den).expect("stored denominator is nonzero")
}

/// The full catalog in a fixed order.
pub fn catalog() -> Vec<ModelEntry> {
    GfModel::ALL.iter().map(|&m| entry(m)).collect()
}

/// Catalog entry of one model.
pub fn model_entry(model: GfModel) -> ModelEntry {
    entry(model)
}

/// A square linear system over rational functions of `q`, rows ordered
/// like the recipes, columns like `unknowns`.
pub struct LinearSystem {
    pub unknowns: Vec<Unknown>,
    pub matrix: Vec<Vec<UniRat>>,
    pub rhs: Vec<UniRat>,
}

fn apply_steps(coeff: &MultiRat, steps: &[RecipeStep]) -> Result<MultiRat, TemperleyError> {
    let mut acc = coeff.clone();
    for step in steps {
        acc = match *step {
            RecipeStep::Differentiate(v) => acc.differentiate(v),
            RecipeStep::Set(v, value) => {
                acc.substitute(v, &BigRational::from_integer(value.into()))?
            }
        };
    }
    Ok(acc)
}

/// Builds the model's linear system by pushing every recipe through every
/// term of its master equation. Substitutions at 0 and 1 never vanish on
/// the cataloged denominators.
pub fn assemble(model: GfModel) -> Result<LinearSystem, TemperleyError> {
    let entry = entry(model);
    if entry.masters.is_empty() {
        return Err(TemperleyError::NoMasterEquations(model));
    }
    assert_eq!(
        entry.recipes.len(),
        entry.unknowns.len(),
        "catalog lists one recipe per unknown"
    );
    let index: BTreeMap<Unknown, usize> = entry
        .unknowns
        .iter()
        .enumerate()
        .map(|(i, &u)| (u, i))
        .collect();
    let n = entry.unknowns.len();
    let mut matrix = vec![vec![UniRat::zero(); n]; n];
    let mut rhs = vec![UniRat::zero(); n];
    for (r, recipe) in entry.recipes.iter().enumerate() {
        matrix[r][index[&recipe.target]] = UniRat::one();
        for term in &entry.masters[recipe.equation].terms {
            let specialized = apply_steps(&term.coeff, &recipe.steps)?.to_unirat()?;
            if term.unknowns.is_empty() {
                rhs[r] = rhs[r].add(&specialized);
            } else {
                for &(u, mult) in &term.unknowns {
                    let scaled =
                        specialized.mul(&UniRat::from_poly(IntPoly::constant(mult.into())));
                    matrix[r][index[&u]] = matrix[r][index[&u]].sub(&scaled);
                }
            }
        }
    }
    Ok(LinearSystem {
        unknowns: entry.unknowns,
        matrix,
        rhs,
    })
}

/// Solves the model's system, returning the unknowns in catalog order.
pub fn solve(model: GfModel) -> Result<Vec<(Unknown, UniRat)>, TemperleyError> {
    let system = assemble(model)?;
    let values = solve_linear(&system.matrix, &system.rhs).map_err(TemperleyError::Algebra)?;
    Ok(system.unknowns.into_iter().zip(values).collect())
}

/// The area generating function of a model: solved from the catalog, or
/// the stored form for level 3.
pub fn area_gf(model: GfModel) -> Result<UniRat, TemperleyError> {
    let entry = entry(model);
    if let Some(form) = entry.closed_form {
        return Ok(form);
    }
    let solved: BTreeMap<Unknown, UniRat> = solve(model)?.into_iter().collect();
    let mut acc = UniRat::zero();
    for u in entry.output {
        acc = acc.add(&solved[&u]);
    }
    Ok(acc)
}

/// Solved unknowns rendered as JSON: a map from unknown name to ascending
/// integer coefficient lists `{ "num": [...], "den": [...] }`.
pub fn solved_unknowns_json(model: GfModel) -> Result<serde_json::Value, TemperleyError> {
    let mut unknowns = serde_json::Map::new();
    for (u, f) in solve(model)? {
        let render = |p: &IntPoly| -> serde_json::Value {
            p.coeffs().iter().map(|c| c.to_string()).collect()
        };
        unknowns.insert(
            u.name().to_owned(),
            serde_json::json!({
                "definition": u.definition(),
                "num": render(f.num()),
                "den": render(f.den()),
            }),
        );
    }
    Ok(serde_json::Value::Object(unknowns))
}

/// Splitmix64, used to pick reproducible random rational sample points.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// A rational strictly between 0 and 1 with a small numerator and
    /// denominator, never 1/2 twice in a row thanks to the denominators
    /// being drawn from a range.
    fn rational(&mut self) -> BigRational {
        let den = 5 + (self.next() % 23) as i64;
        let num = 1 + (self.next() % (den as u64 - 1)) as i64;
        BigRational::new(num.into(), den.into())
    }
}

/// Replays a model's master equations numerically: the refined series is
/// rebuilt from shape-resolved column-transfer counts with the catalytic
/// variables bound to random rationals, and both sides are compared as
/// `q`-series to the given depth, at three sample points. A `false` means
/// some equation's transcription disagrees with the family it claims to
/// describe.
pub fn verify_master(model: GfModel, depth: usize) -> Result<bool, TemperleyError> {
    let entry = entry(model);
    if entry.masters.is_empty() {
        return Err(TemperleyError::NoMasterEquations(model));
    }
    let solved: BTreeMap<Unknown, Vec<BigRational>> = solve(model)?
        .into_iter()
        .map(|(u, f)| Ok((u, f.series(depth + 1)?)))
        .collect::<Result<_, ExactAlgError>>()?;
    let by_shape = columndp::count_by_shape(model.level(), depth as u32);

    let mut rng = SplitMix64(0x5eed_cafe_f00d_0001);
    for _ in 0..3 {
        let tv = rng.rational();
        let uv = rng.rational();
        let vv = rng.rational();
        for (eq_index, master) in entry.masters.iter().enumerate() {
            let lhs = refined_series(model, eq_index, &by_shape, depth, &tv, &uv, &vv);
            let mut rhs = vec![BigRational::zero(); depth + 1];
            for term in &master.terms {
                let bound = term
                    .coeff
                    .substitute(Variable::T, &tv)?
                    .substitute(Variable::U, &uv)?
                    .substitute(Variable::V, &vv)?
                    .to_unirat()?;
                let coeff_series = bound.series(depth + 1)?;
                if term.unknowns.is_empty() {
                    for (acc, c) in rhs.iter_mut().zip(&coeff_series) {
                        *acc += c;
                    }
                } else {
                    let mut combo = vec![BigRational::zero(); depth + 1];
                    for &(u, mult) in &term.unknowns {
                        let mult = BigRational::from_integer(mult.into());
                        for (acc, c) in combo.iter_mut().zip(&solved[&u]) {
                            *acc += c * &mult;
                        }
                    }
                    let product = crate::exactalg::series_mul(&coeff_series, &combo, depth + 1);
                    for (acc, c) in rhs.iter_mut().zip(&product) {
                        *acc += c;
                    }
                }
            }
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The refined series of one master equation's left-hand side, rebuilt
/// from shape-resolved counts: weight `t^height` for every eligible last
/// column, additionally `u^upper v^lower` for the gap-2 equation.
fn refined_series(
    model: GfModel,
    eq_index: usize,
    by_shape: &[BTreeMap<ColumnShape, num_bigint::BigUint>],
    depth: usize,
    tv: &BigRational,
    uv: &BigRational,
    vv: &BigRational,
) -> Vec<BigRational> {
    let max_height = depth + model.level() as usize;
    let t_pow = powers(tv, max_height + 1);
    let u_pow = powers(uv, max_height + 1);
    let v_pow = powers(vv, max_height + 1);
    let mut out = vec![BigRational::zero(); depth + 1];
    for (i, shapes) in by_shape.iter().enumerate().take(depth) {
        let n = i + 1;
        for (shape, count) in shapes {
            let split_equation = model == GfModel::Level2 && eq_index == 1;
            let eligible = if split_equation {
                shape.gap() == 2
            } else if model == GfModel::Level2 {
                shape.gap() <= 1
            } else {
                true
            };
            if !eligible {
                continue;
            }
            let mut w = BigRational::from_integer(count.clone().into());
            w *= &t_pow[shape.height() as usize];
            if split_equation {
                w *= &u_pow[shape.upper() as usize];
                w *= &v_pow[shape.lower() as usize];
            }
            out[n] += w;
        }
    }
    out
}

fn powers(x: &BigRational, len: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(len);
    out.push(BigRational::one());
    for _ in 1..len {
        out.push(out.last().unwrap() * x);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The same specializations the recipes target, rebuilt directly from
    /// shape-resolved column-transfer counts.
    fn oracle_series(unknown: Unknown, depth: usize) -> Vec<BigRational> {
        use Unknown::*;
        let level = match unknown {
            A1 | B1 => 0,
            C1 | D1 => 1,
            _ => 2,
        };
        let by_shape = columndp::count_by_shape(level, depth as u32);
        let mut out = vec![BigRational::zero(); depth + 1];
        for (i, shapes) in by_shape.iter().enumerate() {
            for (shape, count) in shapes {
                let weight: i64 = match unknown {
                    A1 | C1 => 1,
                    B1 | D1 => shape.height() as i64,
                    E1 if shape.gap() <= 1 => 1,
                    F1 if shape.gap() <= 1 => shape.height() as i64,
                    F0 if shape.gap() == 0 && shape.height() == 1 => 1,
                    G1 if shape.gap() == 2 => 1,
                    H1 if shape.gap() == 2 => shape.height() as i64,
                    I0 if shape.gap() == 2 && shape.upper() == 1 => 1,
                    J0 if shape.gap() == 2 && shape.lower() == 1 => 1,
                    _ => 0,
                };
                if weight != 0 {
                    out[i + 1] += BigRational::from_integer(count.clone().into())
                        * BigRational::from_integer(weight.into());
                }
            }
        }
        out
    }

    #[test]
    fn solved_unknowns_match_shape_resolved_counts() {
        let depth = 10;
        for model in [GfModel::ColumnConvex, GfModel::Level1, GfModel::Level2] {
            for (unknown, f) in solve(model).unwrap() {
                assert_eq!(
                    f.series(depth + 1).unwrap(),
                    oracle_series(unknown, depth),
                    "{model}: {} drifted from the column-transfer counts",
                    unknown.name()
                );
            }
        }
    }

    #[test]
    fn column_convex_system_rows() {
        let system = assemble(GfModel::ColumnConvex).unwrap();
        assert_eq!(system.unknowns, vec![Unknown::A1, Unknown::B1]);
        let rat = |num: &[i64], den: &[i64]| {
            UniRat::new(
                IntPoly::from_coeffs(num.iter().copied()),
                IntPoly::from_coeffs(den.iter().copied()),
            )
            .unwrap()
        };
        // Setting t = 1 in the master equation gives
        //   A1 (1 - q/(1-q)^2) - B1 q/(1-q) = q/(1-q).
        assert_eq!(system.matrix[0][0], rat(&[1, -3, 1], &[1, -2, 1]));
        assert_eq!(system.matrix[0][1], rat(&[0, -1], &[1, -1]));
        assert_eq!(system.rhs[0], rat(&[0, 1], &[1, -1]));
        // d/dt then t = 1 gives
        //   B1 (1 - q/(1-q)^2) - A1 (q + q^2)/(1-q)^3 = q/(1-q)^2.
        assert_eq!(system.matrix[1][0], rat(&[0, -1, -1], &[1, -3, 3, -1]));
        assert_eq!(system.matrix[1][1], rat(&[1, -3, 1], &[1, -2, 1]));
        assert_eq!(system.rhs[1], rat(&[0, 1], &[1, -2, 1]));
    }

    fn expected_gf(num: &[i64], den: &[i64]) -> UniRat {
        UniRat::new(
            IntPoly::from_coeffs(num.iter().copied()),
            IntPoly::from_coeffs(den.iter().copied()),
        )
        .unwrap()
    }

    #[test]
    fn column_convex_gf_solves_to_quartic_form() {
        assert_eq!(
            area_gf(GfModel::ColumnConvex).unwrap(),
            expected_gf(&[0, 1, -3, 3, -1], &[1, -6, 10, -7, 1])
        );
    }

    #[test]
    fn level1_gf_solves_to_cubic_form() {
        assert_eq!(
            area_gf(GfModel::Level1).unwrap(),
            expected_gf(&[0, 1, -3, 1], &[1, -6, 8, -1])
        );
    }

    #[test]
    fn level2_gf_solves_to_degree11_form() {
        assert_eq!(
            area_gf(GfModel::Level2).unwrap(),
            expected_gf(
                &[0, 1, -6, 11, -6, -1, 0, -3, 5, 4, -3, -3],
                &[1, -9, 27, -31, 8, 4, -2, 16, -5, -16, -2, 5],
            )
        );
    }

    #[test]
    fn gf_series_reproduce_column_transfer_counts() {
        for model in GfModel::ALL {
            let series = area_gf(model).unwrap().series(13).unwrap();
            let counts = columndp::count(model.level(), 12);
            assert!(series[0].is_zero());
            for (n, count) in counts.iter().enumerate() {
                let expected = BigRational::from_integer(count.clone().into());
                assert_eq!(series[n + 1], expected, "{model} coefficient {}", n + 1);
            }
        }
    }

    #[test]
    fn height_weighted_series_dominate_plain_ones() {
        // Every polyomino has last-column height at least 1, so the
        // d/dt-at-1 specializations majorize their t = 1 counterparts.
        for (plain, weighted) in [
            (Unknown::A1, Unknown::B1),
            (Unknown::C1, Unknown::D1),
            (Unknown::G1, Unknown::H1),
        ] {
            let p = oracle_series(plain, 14);
            let w = oracle_series(weighted, 14);
            for (a, b) in p.iter().zip(&w) {
                assert!(b >= a);
            }
        }
    }

    #[test]
    fn master_equations_verify_against_counts() {
        for model in [GfModel::ColumnConvex, GfModel::Level1, GfModel::Level2] {
            assert_eq!(verify_master(model, 8), Ok(true), "{model}");
        }
    }

    #[test]
    fn level3_has_no_master_equations() {
        assert_eq!(
            verify_master(GfModel::Level3, 4),
            Err(TemperleyError::NoMasterEquations(GfModel::Level3))
        );
        assert!(matches!(
            assemble(GfModel::Level3),
            Err(TemperleyError::NoMasterEquations(_))
        ));
    }

    #[test]
    fn unknowns_render_to_json() {
        let value = solved_unknowns_json(GfModel::ColumnConvex).unwrap();
        let map = value.as_object().unwrap();
        assert_eq!(map.len(), 2);
        let a1 = &map["A1"];
        assert_eq!(a1["num"].as_array().unwrap()[1], "1");
        assert_eq!(a1["den"].as_array().unwrap()[0], "1");
        assert_eq!(a1["den"].as_array().unwrap()[1], "-6");
        assert!(a1["definition"].as_str().unwrap().contains("t = 1"));
    }

    #[test]
    fn model_round_trips_through_family() {
        for model in GfModel::ALL {
            assert_eq!(GfModel::from_family(model.family()), Some(model));
        }
        assert_eq!(GfModel::from_family(FamilySpec::All), None);
        assert_eq!(
            GfModel::from_family(FamilySpec::cheesy(4).unwrap()),
            None
        );
    }

    #[test]
    fn catalog_is_internally_consistent() {
        for entry in catalog() {
            assert_eq!(entry.recipes.len(), entry.unknowns.len());
            for recipe in &entry.recipes {
                assert!(recipe.equation < entry.masters.len());
                assert!(entry.unknowns.contains(&recipe.target));
            }
            for u in &entry.output {
                assert!(entry.unknowns.contains(u));
            }
            if entry.masters.is_empty() {
                assert!(entry.closed_form.is_some());
            } else {
                assert!(entry.closed_form.is_none());
            }
            for master in &entry.masters {
                for term in &master.terms {
                    for &(u, mult) in &term.unknowns {
                        assert!(entry.unknowns.contains(&u), "{}", u.name());
                        assert_ne!(mult, 0);
                    }
                }
            }
        }
    }
}

