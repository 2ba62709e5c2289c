use std::path::Path;

use anyhow::{bail, Result};
use num_traits::Zero;
use serde_json::{json, Value};

use hilbk3::bb_lattice::{certify_no_trianalytic, Verdict};
use hilbk3::cohomology::{hilbert_poincare, verify_semismall, SurfaceBetti};
use hilbk3::exec::Mode;
use hilbk3::fixtures;
use hilbk3::frobenius::{build_algebra, expected_dimensions, SymSpace, MAX_TABLE_DIM, MAX_TABLE_N};
use hilbk3::invariant_ideals::{classify_invariant_ideals, punctual_fixed_points};
use hilbk3::linalg::Q;
use hilbk3::partitions::{
    codim_diagonal, enumerate_universal_reldim0, fiber_dimension, is_triangular, partitions,
};

use crate::gram;
use crate::report::{rational, render_table, Report};

pub fn betti(n: usize, surface: Option<&str>) -> Result<Report> {
    if n == 0 {
        bail!(hilbk3::Error::Invalid("n must be at least 1".into()));
    }
    let s = match surface {
        Some(text) => SurfaceBetti::parse(text)?,
        None => SurfaceBetti::K3,
    };
    let h = hilbert_poincare(&s, n)?;
    let duality = h.total.satisfies_duality();
    let odd = h.total.odd_vanish();
    let ledger: Vec<Value> = h
        .ledger
        .iter()
        .map(|c| {
            json!({
                "diagram": c.diagram.parts(),
                "codim": c.codim,
                "diagonal": c.diagonal.betti(),
                "contribution": c.contribution.betti(),
            })
        })
        .collect();
    let mut trail = vec![format!(
        "b_i(M^[{n}]) = sum over partitions a of b_(i - codim D_a)(D_a), {} strata",
        h.ledger.len()
    )];
    if n >= 2 {
        let b2: Vec<String> = h
            .ledger_at(2)
            .iter()
            .map(|(d, c)| format!("{d}: {c}"))
            .collect();
        trail.push(format!("b_2 = {} from {}", h.total.get(2), b2.join(", ")));
    }
    trail.push(format!("duality b_i = b_(4n-i): {duality}"));
    trail.push(format!("odd Betti numbers vanish: {odd}"));

    let table = render_table(
        &["i", "b_i"],
        &h.total
            .betti()
            .iter()
            .enumerate()
            .map(|(i, b)| vec![i.to_string(), b.to_string()])
            .collect::<Vec<_>>(),
    );
    Ok(Report {
        command: "betti",
        input: json!({ "n": n, "surface": [s.b0, s.b2, s.b4] }),
        result: json!({
            "betti": h.total.betti(),
            "euler_characteristic": h.total.euler_characteristic().to_string(),
            "total_dimension": h.total.total_dimension().to_string(),
            "duality": duality,
            "odd_vanish": odd,
            "ledger": ledger,
        }),
        trail,
        ok: duality && odd,
        table,
    })
}

pub fn certify(n: usize, gram_path: Option<&Path>, seed: u64) -> Result<Report> {
    if n < 2 {
        bail!(hilbk3::Error::Invalid("certify needs n >= 2".into()));
    }
    let g = gram_path.map(gram::load).transpose()?;
    let rep = certify_no_trianalytic(n, g.as_ref(), seed)?;

    let mut rows = Vec::new();
    let candidates: Vec<Value> = rep
        .candidates
        .iter()
        .map(|c| {
            let mut v = json!({
                "diagram": c.diagram.parts(),
                "kind": c.kind.label(),
                "verdict": c.verdict.label(),
                "obstructed": c.verdict.is_obstructed(),
                "trail": c.trail,
            });
            let detail = match &c.verdict {
                Verdict::Obstructed { l, coefficient } => {
                    v["l"] = json!(l);
                    v["coefficient"] = rational(coefficient);
                    format!("c = {coefficient}")
                }
                Verdict::H4Obstructed { k, triples } => {
                    v["k"] = json!(k);
                    v["h4"] = json!(true);
                    v["triples"] = json!(triples);
                    "h4 = true".into()
                }
                Verdict::ProductCase => {
                    v["product_flag"] = json!(true);
                    "flagged".into()
                }
                Verdict::Improper | Verdict::Open => String::new(),
            };
            rows.push(vec![
                c.diagram.to_string(),
                c.kind.label(),
                c.verdict.label(),
                detail,
            ]);
            v
        })
        .collect();

    let summary = if !rep.has_proper_candidates() {
        "no proper candidates".to_string()
    } else if rep.certified {
        format!(
            "every proper simple candidate is obstructed; {} product case(s) flagged",
            rep.flagged
        )
    } else {
        "some simple candidate is not obstructed".to_string()
    };
    let trail = vec![
        format!(
            "candidates for n = {n}: universal, relative dimension zero, triangular parts ({} total)",
            rep.candidates.len()
        ),
        format!("seed {seed} drives period triples for the l = 1 check only"),
        summary.clone(),
    ];
    let table = format!(
        "{}\n\n{summary}",
        render_table(&["diagram", "kind", "verdict", "detail"], &rows)
    );
    Ok(Report {
        command: "certify",
        input: json!({
            "n": n,
            "gram": gram_path.map(|p| p.display().to_string()),
            "seed": seed,
        }),
        result: json!({
            "candidates": candidates,
            "proper_candidates": rep.has_proper_candidates(),
            "certified": rep.certified,
            "product_flags": rep.flagged,
            "verdict": summary,
        }),
        trail,
        ok: rep.certified,
        table,
    })
}

pub fn ideals(order: usize) -> Result<Report> {
    let c = classify_invariant_ideals(order)?;
    let powers = c.powers();
    let ideals: Vec<Value> = c
        .ideals
        .iter()
        .map(|s| {
            json!({
                "degrees": s.degrees.iter().collect::<Vec<_>>(),
                "power": s.as_power(order),
            })
        })
        .collect();
    let expected: Vec<usize> = (1..order).collect();
    let ok = powers.as_ref() == Some(&expected);
    let names: Vec<String> = c
        .ideals
        .iter()
        .map(|s| match s.as_power(order) {
            Some(j) => format!("m^{j}"),
            None => format!("{:?}", s.degrees),
        })
        .collect();
    let trail = vec![
        format!(
            "C[x,y]/m^{order}: one highest weight vector per graded piece ({:?})",
            c.highest_weights
        ),
        format!(
            "{} sl2-invariant graded subspaces, {} of them ideals",
            c.invariant_subspaces,
            c.ideals.len()
        ),
        format!("ideals: {}", names.join(", ")),
    ];
    let table = render_table(
        &["ideal", "degrees"],
        &c.ideals
            .iter()
            .zip(&names)
            .map(|(s, n)| vec![n.clone(), format!("{:?}", s.degrees)])
            .collect::<Vec<_>>(),
    );
    Ok(Report {
        command: "ideals",
        input: json!({ "N": order }),
        result: json!({
            "highest_weights": c.highest_weights,
            "invariant_subspaces": c.invariant_subspaces,
            "ideals": ideals,
            "powers": powers,
        }),
        trail,
        ok,
        table,
    })
}

pub fn punctual(i: usize) -> Result<Report> {
    let points = punctual_fixed_points(i)?;
    let triangular = is_triangular(i);
    let universal = enumerate_universal_reldim0(i);
    let single_part = universal.iter().any(|u| u.parts() == [i]);
    let ok = points.len() == usize::from(triangular.is_some())
        && points.len() == usize::from(single_part)
        && points.iter().all(|p| p.colength() == i);
    let fixed: Vec<Value> = points
        .iter()
        .map(|p| {
            json!({
                "ideal": p.to_string(),
                "staircase": p.staircase.parts(),
                "generators": p.generators(),
                "colength": p.colength(),
            })
        })
        .collect();
    let trail = vec![
        format!("monomial ideals of colength {i} stable under e, f"),
        match triangular {
            Some(l) => format!("{i} = {l}*{}/2 is triangular", l + 1),
            None => format!("{i} is not triangular"),
        },
        format!("fixed points: {}", points.len()),
    ];
    let table = render_table(
        &["ideal", "staircase"],
        &points
            .iter()
            .map(|p| vec![p.to_string(), p.staircase.to_string()])
            .collect::<Vec<_>>(),
    );
    Ok(Report {
        command: "punctual",
        input: json!({ "i": i }),
        result: json!({
            "count": points.len(),
            "triangular": triangular,
            "fixed_points": fixed,
        }),
        trail,
        ok,
        table,
    })
}

pub fn strata(n: usize) -> Result<Report> {
    if n == 0 {
        bail!(hilbk3::Error::Invalid("n must be at least 1".into()));
    }
    let mut parts = partitions(n);
    parts.reverse();
    let semismall = verify_semismall(n)?;
    let rows: Vec<Value> = parts
        .iter()
        .map(|a| {
            json!({
                "diagram": a.parts(),
                "codim": codim_diagonal(a),
                "fiber_dim": fiber_dimension(a),
            })
        })
        .collect();
    let codims: Vec<usize> = parts.iter().map(codim_diagonal).collect();
    let ok = semismall.all_pass() && semismall.all_equal();
    let trail = vec![
        format!(
            "{} partitions of {n}, increasing lexicographic order",
            parts.len()
        ),
        "codim D_a = 2 sum (n_i - 1) = 2 fiber dim".into(),
        format!("semismall equality on every stratum: {ok}"),
    ];
    let table = render_table(
        &["diagram", "codim", "fiber_dim"],
        &parts
            .iter()
            .map(|a| {
                vec![
                    a.to_string(),
                    codim_diagonal(a).to_string(),
                    fiber_dimension(a).to_string(),
                ]
            })
            .collect::<Vec<_>>(),
    );
    Ok(Report {
        command: "strata",
        input: json!({ "n": n }),
        result: json!({
            "count": parts.len(),
            "codims": codims,
            "strata": rows,
            "semismall": ok,
        }),
        trail,
        ok,
        table,
    })
}

pub struct FrobeniusArgs<'a> {
    pub dim_v: usize,
    pub n: usize,
    pub gram: Option<&'a Path>,
    pub seed: u64,
    pub max_degree: Option<usize>,
    pub mode: Mode,
}

pub fn frobenius(args: FrobeniusArgs<'_>) -> Result<Report> {
    let FrobeniusArgs {
        dim_v,
        n,
        seed,
        max_degree,
        mode,
        ..
    } = args;
    if n == 0 {
        bail!(hilbk3::Error::Invalid("n must be at least 1".into()));
    }
    let g = match args.gram {
        Some(p) => gram::load(p)?,
        None => gram::default_for_dim(dim_v, n)?,
    };
    if g.rows() != dim_v {
        bail!(hilbk3::Error::Dimension(format!(
            "Gram file has dim {}, --dimv is {dim_v}",
            g.rows()
        )));
    }
    if g.det()?.is_zero() {
        bail!(hilbk3::Error::Degenerate("Gram matrix is singular".into()));
    }
    let input = json!({
        "dimv": dim_v,
        "n": n,
        "gram": args.gram.map(|p| p.display().to_string()),
        "seed": seed,
        "max_degree": max_degree,
    });
    let expected = expected_dimensions(dim_v, n);

    if dim_v > MAX_TABLE_DIM || n > MAX_TABLE_N {
        // Too large for tables: report the generating relations only.
        let space = SymSpace::new(g)?;
        let top = max_degree.unwrap_or(n + 1).min(n + 1).max(2);
        let harmonic: Vec<Value> = (2..=top)
            .map(|d| {
                Ok(json!({
                    "degree": d,
                    "sym": space.dimension(d),
                    "harmonic": space.harmonic_dimension(d)?,
                }))
            })
            .collect::<Result<_>>()?;
        let table = render_table(
            &["degree", "dim S^d", "dim ker Laplacian"],
            &harmonic
                .iter()
                .map(|h| {
                    vec![
                        h["degree"].to_string(),
                        h["sym"].to_string(),
                        h["harmonic"].to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        );
        return Ok(Report {
            command: "frobenius",
            input,
            result: json!({
                "tables": false,
                "expected_dimensions": expected,
                "harmonic": harmonic,
            }),
            trail: vec![format!(
                "full tables limited to dim V <= {MAX_TABLE_DIM}, n <= {MAX_TABLE_N}; harmonic dimensions only"
            )],
            ok: true,
            table,
        });
    }

    let a = build_algebra(&g, n)?;
    let dims = a.dimensions();
    let dets = a.pairing_determinants()?;
    let nondegenerate = dets.iter().all(|d| !d.is_zero());
    let associative = a.check_associativity(mode);
    let commutative = a.check_commutativity();

    // α^(n+1) = 0 for isotropic α; needs an isotropic base vector.
    let mut rng = fixtures::rng(seed);
    let isotropic = match isotropic_base(&g) {
        Some(base) => {
            let mut all = true;
            for _ in 0..10 {
                let alpha = fixtures::isotropic_through(&g, &base, &mut rng)?;
                all &= a.power(&alpha, n + 1)?.iter().all(Zero::is_zero);
            }
            Some(all)
        }
        None => None,
    };

    let max_degree = max_degree.unwrap_or(a.top()).min(a.top());
    let mut tables = Vec::new();
    for i in 0..=max_degree {
        for j in i..=max_degree {
            if i + j > a.top() || i + j > max_degree {
                continue;
            }
            let t: Vec<Vec<Vec<Value>>> = a
                .table(i, j)
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|v| v.iter().map(rational).collect())
                        .collect()
                })
                .collect();
            tables.push(json!({ "i": i, "j": j, "products": t }));
        }
    }
    let basis: Vec<Vec<Vec<u8>>> = (0..=a.top())
        .map(|i| {
            (0..a.dimension(i))
                .map(|k| a.basis_monomial(i, k))
                .collect()
        })
        .collect();

    let ok = dims == expected
        && nondegenerate
        && associative
        && commutative
        && isotropic.unwrap_or(true);
    let trail = vec![
        format!(
            "A(V, {n}) = Sym(V) / I, I generated by ker Laplacian in degree {}",
            n + 1
        ),
        format!("dimensions {dims:?}, expected {expected:?}"),
        format!(
            "pairing determinants: {}",
            dets.iter().map(Q::to_string).collect::<Vec<_>>().join(", ")
        ),
        format!("associative: {associative}, commutative: {commutative}"),
        match isotropic {
            Some(b) => format!(
                "alpha^{} = 0 for 10 isotropic alpha (seed {seed}): {b}",
                n + 1
            ),
            None => "form is anisotropic over the searched vectors; isotropic check skipped".into(),
        },
    ];
    let table = render_table(
        &["degree", "dim", "expected"],
        &dims
            .iter()
            .zip(&expected)
            .enumerate()
            .map(|(i, (d, e))| vec![i.to_string(), d.to_string(), e.to_string()])
            .collect::<Vec<_>>(),
    );
    Ok(Report {
        command: "frobenius",
        input,
        result: json!({
            "tables": true,
            "dimensions": dims,
            "expected_dimensions": expected,
            "pairing_determinants": dets.iter().map(rational).collect::<Vec<_>>(),
            "pairing_nondegenerate": nondegenerate,
            "associative": associative,
            "commutative": commutative,
            "isotropic_nilpotent": isotropic,
            "basis": basis,
            "multiplication": tables,
        }),
        trail,
        ok,
        table,
    })
}

/// A nonzero isotropic vector, searched among `e_i` and `e_i ± e_j`.
fn isotropic_base(g: &hilbk3::linalg::Matrix) -> Option<Vec<Q>> {
    let d = g.rows();
    let unit = |i: usize| -> Vec<Q> {
        let mut v = vec![Q::zero(); d];
        v[i] = hilbk3::linalg::q(1);
        v
    };
    for i in 0..d {
        if g[(i, i)].is_zero() {
            return Some(unit(i));
        }
    }
    for i in 0..d {
        for j in i + 1..d {
            for s in [1, -1] {
                let mut v = unit(i);
                v[j] = hilbk3::linalg::q(s);
                if g.bilinear(&v, &v).ok()?.is_zero() {
                    return Some(v);
                }
            }
        }
    }
    None
}
