//! Worked examples: each entry is an automaton plus, where one is known in closed
//! form, its inverse.

use std::collections::HashMap;

use aca_core::algebra::{interpolate, Field, FieldElement, MultiPoly, Ring};
use aca_core::automata::{ca_make, product_ring, CellularAutomaton};
use aca_core::geometry::AlgebraicSet;
use aca_core::lattice::{GroupElement, Window};
use aca_core::{limits, Budget, Error};

use crate::error::{Result, WorkbenchError};
use crate::spec::AutomatonSpec;

pub const NAMES: &[&str] = &[
    "shift",
    "affine",
    "pointwise",
    "sl2-difference",
    "triangular2",
    "triangular3",
    "real-quadratic",
    "frobenius",
];

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub automaton: CellularAutomaton,
    pub inverse: Option<CellularAutomaton>,
    pub notes: Vec<String>,
}

impl CatalogEntry {
    pub fn spec(&self) -> AutomatonSpec {
        let mut s = AutomatonSpec::from_automaton(&self.automaton, Some(&self.name));
        s.notes = self.notes.clone();
        s
    }

    pub fn inverse_spec(&self) -> Option<AutomatonSpec> {
        self.inverse
            .as_ref()
            .map(|inv| AutomatonSpec::from_automaton(inv, Some(&format!("{}-inverse", self.name))))
    }
}

/// Looks up a catalog entry with its default parameters; `field` overrides the
/// default field where the construction allows it.
pub fn lookup(name: &str, field: Option<&Field>, budget: &Budget) -> Result<CatalogEntry> {
    let pick = |default: &str| field.cloned().map_or_else(|| Field::parse(default), Ok);
    let entry = match name {
        "shift" => {
            let f = pick("5")?;
            let mut e = affine(&f, &f.one(), &f.zero(), 1, budget)?;
            e.notes = vec!["x(n+1)".into()];
            e
        }
        "affine" => {
            let f = pick("5")?;
            affine(&f, &f.from_i64(2), &f.from_i64(3), 1, budget)?
        }
        "pointwise" => {
            let f = pick("5")?;
            let ring = Ring::affine(f.clone(), 1);
            pointwise(
                &AlgebraicSet::full(&ring),
                &[ring.parse("t1^3 + 1")?],
                &GroupElement(vec![1]),
                budget,
            )?
        }
        "sl2-difference" => sl2_difference(&pick("5")?, budget)?,
        "triangular2" => {
            let f = pick("5")?;
            let ring = Ring::affine(f.clone(), 2);
            triangular(&f, &[f.one(), f.one()], &[ring.zero(), ring.parse("t1^2")?], budget)?
        }
        "triangular3" => {
            let f = pick("5")?;
            let ring = Ring::affine(f.clone(), 3);
            let ps = [ring.one(), ring.parse("t1^2")?, ring.parse("t1*t2 + t2^2")?];
            triangular(&f, &[f.one(), f.from_i64(2), f.from_i64(3)], &ps, budget)?
        }
        "real-quadratic" => {
            if field.is_some_and(|f| !f.is_rationals()) {
                return Err(WorkbenchError::usage("real-quadratic is defined over Q only"));
            }
            real_quadratic()
        }
        "frobenius" => frobenius(&pick("3^2")?, budget)?,
        other => {
            return Err(WorkbenchError::usage(format!(
                "unknown example `{other}`; available: {}",
                NAMES.join(", ")
            )))
        }
    };
    Ok(CatalogEntry {
        name: name.to_string(),
        ..entry
    })
}

fn line_rule(field: &Field, cells: usize, text: &str, memory: &Window, budget: &Budget) -> Result<CellularAutomaton> {
    let alphabet = AlgebraicSet::full(&Ring::affine(field.clone(), 1));
    let poly = product_ring(field, 1, cells).parse(text)?;
    Ok(ca_make(&alphabet, memory, vec![poly], budget)?)
}

/// `τ(x)(n) = αx(n + m0) + β` on `K^Z`, with inverse `α⁻¹x(n - m0) - α⁻¹β`.
pub fn affine(field: &Field, alpha: &FieldElement, beta: &FieldElement, m0: i64, budget: &Budget) -> Result<CatalogEntry> {
    let ainv = field
        .inv(alpha)
        .ok_or_else(|| Error::InvalidParameter("alpha must be nonzero".into()))?;
    let ring = product_ring(field, 1, 1);
    let x = ring.var(0);
    let fwd = x.scale(alpha).add(&ring.constant(beta.clone()));
    let back = x.scale(&ainv).sub(&ring.constant(field.mul(&ainv, beta)));
    let alphabet = AlgebraicSet::full(&Ring::affine(field.clone(), 1));
    Ok(CatalogEntry {
        name: "affine".into(),
        automaton: ca_make(&alphabet, &Window::line([m0]), vec![fwd], budget)?,
        inverse: Some(ca_make(&alphabet, &Window::line([-m0]), vec![back], budget)?),
        notes: vec![format!(
            "alpha={} beta={} m0={m0}",
            field.format(alpha),
            field.format(beta)
        )],
    })
}

/// `τ(x)(g) = f(x(g + g0))` for a regular self-map `f` of the alphabet, given over `t1..tm`.
pub fn pointwise(alphabet: &AlgebraicSet, f: &[MultiPoly], g0: &GroupElement, budget: &Budget) -> Result<CatalogEntry> {
    let m = alphabet.ambient();
    let ring = product_ring(alphabet.field(), m, 1);
    let map: Vec<Option<usize>> = (0..m).map(Some).collect();
    let rule = f.iter().map(|p| p.remap(&ring, &map)).collect();
    let memory = Window::new(g0.dim(), [g0.clone()])?;
    Ok(CatalogEntry {
        name: "pointwise".into(),
        automaton: ca_make(alphabet, &memory, rule, budget)?,
        inverse: None,
        notes: vec![format!("g0={g0}")],
    })
}

/// `τ(x)(n) = x(n + 1)⁻¹ x(n)` on `SL_2(K)`, coordinates `(a, b, c, d)` row-major.
/// Surjective, never injective.
pub fn sl2_difference(field: &Field, budget: &Budget) -> Result<CatalogEntry> {
    let aring = Ring::affine(field.clone(), 4);
    let alphabet = AlgebraicSet::new(&aring, vec![aring.parse("t1*t4 - t2*t3 - 1")?])?;
    let ring = product_ring(field, 4, 2);
    // X0 = x(n) in cell 0, X1 = x(n+1) in cell 1; adj(X1) = [[d, -b], [-c, a]]
    let rules = [
        "x[1][4]*x[0][1] - x[1][2]*x[0][3]",
        "x[1][4]*x[0][2] - x[1][2]*x[0][4]",
        "-x[1][3]*x[0][1] + x[1][1]*x[0][3]",
        "-x[1][3]*x[0][2] + x[1][1]*x[0][4]",
    ]
    .iter()
    .map(|r| ring.parse(r))
    .collect::<Result<Vec<_>, _>>()?;
    Ok(CatalogEntry {
        name: "sl2-difference".into(),
        automaton: ca_make(&alphabet, &Window::line([0, 1]), rules, budget)?,
        inverse: None,
        notes: vec!["x(n+1)^-1 x(n) on SL2".into()],
    })
}

/// The triangular automaton on `K^m` with memory `{1..m}`:
/// `y_i(n) = α_i x_i(n + i) + P_i(x_1(n + 1), ..., x_{i-1}(n + i - 1))`,
/// together with its inverse, memory `{-m..-1}`,
/// `x_i(n) = α_i⁻¹ y_i(n - i) + Q_i(y_1(n - i), ..., y_{i-1}(n - i))` where
/// `Q_i = -α_i⁻¹ P_i(α_1⁻¹t_1 + Q_1, ..., α_{i-1}⁻¹t_{i-1} + Q_{i-1})`.
///
/// `ps[i]` is given over `t1..tm` and may only use `t1..t_{i}` (0-based `i`).
pub fn triangular(field: &Field, alphas: &[FieldElement], ps: &[MultiPoly], budget: &Budget) -> Result<CatalogEntry> {
    let m = alphas.len();
    if m == 0 || ps.len() != m {
        return Err(Error::InvalidParameter("need one alpha and one P per coordinate".into()).into());
    }
    let inv: Vec<FieldElement> = alphas
        .iter()
        .map(|a| field.inv(a))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidParameter("every alpha_i must be nonzero".into()))?;
    let aring = Ring::affine(field.clone(), m);
    for (i, p) in ps.iter().enumerate() {
        let p = p.to_ring(&aring)?;
        if p.support().iter().any(|&v| v >= i) {
            return Err(Error::InvalidParameter(format!("P_{} may only use t1..t{i}", i + 1)).into());
        }
    }
    let ps: Vec<MultiPoly> = ps.iter().map(|p| p.to_ring(&aring)).collect::<Result<_, _>>()?;

    // Q_i over t1..tm, with z_j = α_j⁻¹ t_j + Q_j the recovered x_j
    let mut qs: Vec<MultiPoly> = Vec::with_capacity(m);
    let mut zs: Vec<MultiPoly> = Vec::with_capacity(m);
    for i in 0..m {
        let mut images = zs.clone();
        images.extend((i..m).map(|v| aring.var(v)));
        let q = ps[i].substitute(&images)?.scale(&field.neg(&inv[i]));
        zs.push(aring.var(i).scale(&inv[i]).add(&q));
        qs.push(q);
    }

    let ring = product_ring(field, m, m);
    let fwd_map: Vec<Option<usize>> = (0..m).map(|j| Some(j * m + j)).collect();
    let forward = (0..m)
        .map(|i| ring.var(i * m + i).scale(&alphas[i]).add(&ps[i].remap(&ring, &fwd_map)))
        .collect();
    let backward = (0..m)
        .map(|i| {
            // offset -(i+1) is cell m-1-i of the sorted memory -m..-1
            let cell = m - 1 - i;
            let map: Vec<Option<usize>> = (0..m).map(|j| Some(cell * m + j)).collect();
            ring.var(cell * m + i).scale(&inv[i]).add(&qs[i].remap(&ring, &map))
        })
        .collect();
    let alphabet = AlgebraicSet::full(&aring);
    let notes = vec![
        format!(
            "alpha=({})",
            alphas.iter().map(|a| field.format(a)).collect::<Vec<_>>().join(",")
        ),
        format!("P=({})", ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")),
        format!("Q=({})", qs.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", ")),
    ];
    Ok(CatalogEntry {
        name: format!("triangular{m}"),
        automaton: ca_make(&alphabet, &Window::line(1..=m as i64), forward, budget)?,
        inverse: Some(ca_make(&alphabet, &Window::line(-(m as i64)..=-1), backward, budget)?),
        notes,
    })
}

/// `τ(x)(n) = x(n + 1) - x(n)^2` over the rationals.
pub fn real_quadratic() -> CatalogEntry {
    CatalogEntry {
        name: "real-quadratic".into(),
        automaton: limits::real_quadratic(),
        inverse: None,
        notes: vec!["image dense but not closed".into()],
    }
}

/// `τ(x)(g) = x(g)^p` on `F_{p^k}`, with inverse `x(g)^(p^(k-1))`.
pub fn frobenius(field: &Field, budget: &Budget) -> Result<CatalogEntry> {
    if !field.is_finite() {
        return Err(Error::InfiniteField.into());
    }
    let p = field.characteristic();
    let back = p.pow(field.degree() - 1);
    let memory = Window::line([0]);
    Ok(CatalogEntry {
        name: "frobenius".into(),
        automaton: line_rule(field, 1, &format!("x[0][1]^{p}"), &memory, budget)?,
        inverse: Some(line_rule(field, 1, &format!("x[0][1]^{back}"), &memory, budget)?),
        notes: vec![format!("Frobenius of {field}")],
    })
}

#[derive(Clone, Debug)]
pub struct FrobeniusLevel {
    pub k: u32,
    pub field: Field,
    pub bijective: bool,
    /// The interpolated inverse `F_{p^k} -> F_{p^k}`, when bijective.
    pub inverse: Option<MultiPoly>,
    pub degree: Option<u64>,
}

/// Tabulates `a ↦ a^p` on `F_{p^k}` and interpolates the inverse table.
pub fn frobenius_level(p: u64, k: u32) -> Result<FrobeniusLevel> {
    let field = Field::tower(p, k)?;
    let elements: Vec<FieldElement> = field.elements().collect();
    let mut preimage: HashMap<FieldElement, FieldElement> = HashMap::new();
    let mut bijective = true;
    for a in &elements {
        if preimage.insert(field.pow(a, p), a.clone()).is_some() {
            bijective = false;
        }
    }
    let (inverse, degree) = if bijective {
        let table: Vec<FieldElement> = elements.iter().map(|a| preimage[a].clone()).collect();
        let poly = interpolate(&Ring::affine(field.clone(), 1), &table)?;
        let d = poly.total_degree();
        (Some(poly), Some(d))
    } else {
        (None, None)
    };
    Ok(FrobeniusLevel {
        k,
        field,
        bijective,
        inverse,
        degree,
    })
}
