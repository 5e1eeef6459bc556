//! Acceptance suite: one test per criterion, each printing a single
//! PASS/FAIL line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines for passing criteria too.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use leray_core::corpus::{random_map, random_map_to_path, CorpusConfig};
use leray_core::cosheaf::{leray_cosheaf, FiberChainComplex};
use leray_core::field::{Field, FieldSpec, PrimeField, Rationals};
use leray_core::levelset::{
    check_decomposition, homology_from_barcodes, leray_barcodes, zigzag_of, BarKind, IntervalBar,
    LineTriangulation,
};
use leray_core::linalg::{image, kernel, preimage, Matrix, QuotientSpace, Subspace};
use leray_core::reeb::{reeb_compare, reeb_space};
use leray_core::simplicial::{Simplex, SimplicialComplex};
use leray_core::simplicial_map::SimplicialMap;
use leray_core::spectral::{differential, page_entry, total_homology, verify_convergence};
use leray_core::fixtures;

const CORPUS_SIZE: usize = 100;
const CORPUS_SEED: u64 = 0x1ea7;

/// The shared corpus: random maps whose Reeb quotient is a simplicial
/// complex. Draws whose quotient fails validation (parallel fiber
/// components collapsing to the same vertex set; rejected by
/// construction, covered by a dedicated unit test) are redrawn.
fn corpus() -> Vec<SimplicialMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED);
    let config = CorpusConfig::default();
    let mut out = Vec::with_capacity(CORPUS_SIZE);
    while out.len() < CORPUS_SIZE {
        let f = random_map(&mut rng, &config);
        if reeb_space(&f).is_ok() {
            out.push(f);
        }
    }
    out
}

fn field_for(i: usize) -> FieldSpec {
    match i % 3 {
        0 => FieldSpec::Prime(2),
        1 => FieldSpec::Prime(5),
        _ => FieldSpec::Rationals,
    }
}

fn with_field<T>(spec: FieldSpec, f: impl FnOnce(PrimeField) -> T, g: impl FnOnce() -> T) -> T {
    match spec {
        FieldSpec::Prime(p) => f(PrimeField::new(p).unwrap()),
        FieldSpec::Rationals => g(),
    }
}

fn report(criterion: &str, result: Result<String, String>) {
    match result {
        Ok(detail) => println!("PASS  {criterion}: {detail}"),
        Err(detail) => {
            println!("FAIL  {criterion}: {detail}");
            panic!("{criterion} failed: {detail}");
        }
    }
}

fn check_total_homology<F: Field>(field: F, f: &SimplicialMap) -> Result<(), String> {
    let dim_x = f.domain().dim();
    for k in 0..=dim_x.max(0) {
        let (total, _) = total_homology(field.clone(), f, k);
        let oracle = f.domain().homology_dim(field.clone(), k as usize);
        if total != oracle {
            return Err(format!(
                "degree {k}: limit page gives {total}, oracle gives {oracle}"
            ));
        }
    }
    Ok(())
}

#[test]
fn criterion_1_limit_page_reassembles_homology() {
    let start = Instant::now();
    let maps = corpus();
    for (i, f) in maps.iter().enumerate() {
        let result = with_field(
            field_for(i),
            |k| check_total_homology(k, f),
            || check_total_homology(Rationals, f),
        );
        if let Err(e) = result {
            report("criterion 1 (limit page reassembly)", Err(format!("map {i}: {e}")));
        }
    }
    let elapsed = start.elapsed();
    let ok = elapsed.as_secs() < 60;
    let detail = format!("{} maps in {:.1}s", maps.len(), elapsed.as_secs_f64());
    report(
        "criterion 1 (limit page reassembly)",
        if ok { Ok(detail) } else { Err(format!("too slow: {detail}")) },
    );
}

fn check_page_two_dims<F: Field>(field: F, f: &SimplicialMap) -> Result<(), String> {
    let m = f.codomain_dim();
    let dim_x = f.domain().dim();
    for p in 0..=m.max(0) {
        for q in 0..=(dim_x - p).max(0) {
            let e2 = page_entry(field.clone(), f, 2, p, q).dim();
            let h = if q >= 0 {
                leray_cosheaf(field.clone(), f, q as usize)
                    .map_err(|e| e.to_string())?
                    .cosheaf
                    .homology_dim(p as usize)
            } else {
                0
            };
            if e2 != h {
                return Err(format!("E^2_{{{p},{q}}} = {e2} but H_{p}(Y; L_{q}) = {h}"));
            }
        }
    }
    Ok(())
}

#[test]
fn criterion_2_page_two_is_cosheaf_homology() {
    let maps = corpus();
    for (i, f) in maps.iter().enumerate() {
        let result = with_field(
            field_for(i),
            |k| check_page_two_dims(k, f),
            || check_page_two_dims(Rationals, f),
        );
        if let Err(e) = result {
            report("criterion 2 (page two vs cosheaf homology)", Err(format!("map {i}: {e}")));
        }
    }
    report(
        "criterion 2 (page two vs cosheaf homology)",
        Ok(format!("{} maps, both code paths agree on every support entry", maps.len())),
    );
}

#[test]
fn criterion_3_convergence() {
    let maps = corpus();
    for (i, f) in maps.iter().enumerate() {
        let result = with_field(
            field_for(i),
            |k| verify_convergence(k, f),
            || verify_convergence(Rationals, f),
        );
        if let Err(e) = result {
            report("criterion 3 (convergence by page dim Y + 1)", Err(format!("map {i}: {e}")));
        }
    }
    report(
        "criterion 3 (convergence by page dim Y + 1)",
        Ok(format!(
            "{} maps: d^r∘d^r = 0 through page dim Y + 1, pages dim Y + 1 and + 2 have zero differentials",
            maps.len()
        )),
    );
}

#[test]
fn criterion_4_bar_table() {
    // the four endpoint behaviours, asserted directly
    let table = [
        (BarKind::Closed, (1, 0)),
        (BarKind::ClosedOpen, (0, 0)),
        (BarKind::Open, (0, 1)),
        (BarKind::OpenClosed, (0, 0)),
    ];
    for (kind, expect) in table {
        let bar = IntervalBar::new(kind, 0, 2).unwrap();
        if bar.bar_homology() != expect {
            report("criterion 4 (interval bar table)", Err(format!("table entry {bar} wrong")));
        }
    }
    // recomputed through the generic cosheaf homology machinery
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED + 4);
    let field = PrimeField::new(5).unwrap();
    for i in 0..50 {
        let n = rng.gen_range(1..=6usize);
        let generators: Vec<Vec<u32>> = (0..n).map(|j| vec![j as u32, j as u32 + 1]).collect();
        let line = LineTriangulation::from_complex(
            &SimplicialComplex::close_under_faces(&generators).unwrap(),
        )
        .unwrap();
        let bar = loop {
            let kind = [BarKind::Closed, BarKind::ClosedOpen, BarKind::OpenClosed, BarKind::Open]
                [rng.gen_range(0..4)];
            let a = rng.gen_range(0..=n);
            let b = rng.gen_range(a..=n);
            if let Ok(bar) = IntervalBar::new(kind, a, b) {
                break bar;
            }
        };
        let l = bar.to_cosheaf(field, &line);
        let computed = (l.homology_dim(0), l.homology_dim(1));
        if computed != bar.bar_homology() {
            report(
                "criterion 4 (interval bar table)",
                Err(format!("instance {i}: {bar} on {n} edges gives {computed:?}")),
            );
        }
    }
    report(
        "criterion 4 (interval bar table)",
        Ok("table values exact; 50 randomized recomputations agree".into()),
    );
}

fn check_barcode_pipeline<F: Field>(field: F, f: &SimplicialMap) -> Result<(), String> {
    let line = LineTriangulation::from_complex(f.codomain()).map_err(|e| e.to_string())?;
    let barcodes = leray_barcodes(field.clone(), f).map_err(|e| e.to_string())?;
    for (q, barcode) in barcodes.iter().enumerate() {
        let leray = leray_cosheaf(field.clone(), f, q).map_err(|e| e.to_string())?;
        check_decomposition(&zigzag_of(&leray.cosheaf, &line), barcode)?;
    }
    for k in 0..=barcodes.len() {
        let from_bars = homology_from_barcodes(&barcodes, k);
        let oracle = f.domain().homology_dim(field.clone(), k);
        if from_bars != oracle {
            return Err(format!("degree {k}: barcodes give {from_bars}, oracle gives {oracle}"));
        }
    }
    Ok(())
}

#[test]
fn criterion_5_barcodes_recover_homology() {
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED + 5);
    for i in 0..50 {
        let f = random_map_to_path(&mut rng, 10);
        let result = with_field(
            field_for(i),
            |k| check_barcode_pipeline(k, &f),
            || check_barcode_pipeline(Rationals, &f),
        );
        if let Err(e) = result {
            report("criterion 5 (level-set barcodes)", Err(format!("map {i}: {e}")));
        }
    }
    report(
        "criterion 5 (level-set barcodes)",
        Ok("50 maps onto paths: homology and every generalized rank recovered".into()),
    );
}

#[test]
fn criterion_6_witness_fixture() {
    let f = fixtures::witness_map();
    let field = PrimeField::new(2).unwrap();
    let result = (|| -> Result<(), String> {
        let h = f.domain().homology_dims(field);
        if h != vec![1, 0, 0] {
            return Err(format!("H(X) = {h:?}"));
        }
        let v3 = Simplex::vertex(103);
        let fcc = FiberChainComplex::new(field, &f, &v3).map_err(|e| e.to_string())?;
        if fcc.homology(field, 1).dim() != 1 {
            return Err("fiber over v3 does not have H_1 = k".into());
        }
        let e2_20 = page_entry(field, &f, 2, 2, 0);
        let e2_01 = page_entry(field, &f, 2, 0, 1);
        if e2_20.dim() != 1 || e2_01.dim() != 1 {
            return Err(format!("E^2 dims ({}, {})", e2_20.dim(), e2_01.dim()));
        }
        let d2 = differential(field, &f, &e2_20, &e2_01);
        if d2.rank() != 1 {
            return Err("d^2_{2,0} is not invertible".into());
        }
        if page_entry(field, &f, 3, 2, 0).dim() != 0 || page_entry(field, &f, 3, 0, 1).dim() != 0 {
            return Err("page three entries do not vanish".into());
        }
        let reeb = reeb_space(&f).map_err(|e| e.to_string())?;
        let counts: Vec<usize> = (0..=2).map(|d| reeb.space().simplices(d).len()).collect();
        if counts != vec![4, 6, 4] {
            return Err(format!("Reeb space has face vector {counts:?}"));
        }
        if reeb.space().homology_dim(field, 2) != 1 {
            return Err("H_2 of the Reeb space is not k".into());
        }
        Ok(())
    })();
    report(
        "criterion 6 (witness fixture)",
        result
            .map(|()| "all frozen values reproduced over F_2".into())
            .map_err(|e| e),
    );
}

fn check_reeb_bounds<F: Field>(field: F, f: &SimplicialMap) -> Result<(), String> {
    let reeb = reeb_space(f).map_err(|e| e.to_string())?;
    reeb_compare(field, f, &reeb).check()
}

#[test]
fn criterion_7_reeb_connectivity_bounds() {
    let maps = corpus();
    for (i, f) in maps.iter().enumerate() {
        let result = with_field(
            field_for(i),
            |k| check_reeb_bounds(k, f),
            || check_reeb_bounds(Rationals, f),
        );
        if let Err(e) = result {
            report("criterion 7 (Reeb connectivity)", Err(format!("map {i}: {e}")));
        }
    }
    report(
        "criterion 7 (Reeb connectivity)",
        Ok(format!("{} maps: H_0 preserved, H_1 does not grow", maps.len())),
    );
}

// ---- criterion 8: brute-force oracle for the exact linear algebra ----

/// All vectors of a subspace over F_2, as bitmasks (ambient <= 12).
fn enumerate(s: &Subspace<PrimeField>) -> BTreeSet<u16> {
    let dim = s.dim();
    let basis: Vec<u16> = (0..dim)
        .map(|j| {
            let col = s.basis().column(j);
            col.iter().enumerate().fold(0u16, |acc, (i, &e)| acc | (((e & 1) as u16) << i))
        })
        .collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << dim) {
        let mut v = 0u16;
        for (j, b) in basis.iter().enumerate() {
            if mask & (1 << j) != 0 {
                v ^= b;
            }
        }
        out.insert(v);
    }
    out
}

fn apply(m: &Matrix<PrimeField>, v: u16) -> u16 {
    let mut out = 0u16;
    for i in 0..m.rows() {
        let mut bit = 0u64;
        for j in 0..m.cols() {
            if v & (1 << j) != 0 {
                bit ^= m.get(i, j) & 1;
            }
        }
        out |= (bit as u16) << i;
    }
    out
}

fn random_matrix(rng: &mut impl Rng, field: PrimeField, rows: usize, cols: usize) -> Matrix<PrimeField> {
    Matrix::from_fn(field, rows, cols, |_, _| rng.gen_range(0..2))
}

#[test]
fn criterion_8_linalg_brute_force() {
    let start = Instant::now();
    let field = PrimeField::new(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED + 8);
    for instance in 0..1000 {
        let ambient = rng.gen_range(1..=12usize);
        let cols_u = rng.gen_range(0..=ambient);
        let u = image(&random_matrix(&mut rng, field, ambient, cols_u));
        let cols_v = rng.gen_range(0..=ambient);
        let v = image(&random_matrix(&mut rng, field, ambient, cols_v));
        let set_u = enumerate(&u);
        let set_v = enumerate(&v);

        let result = (|| -> Result<(), String> {
            // intersection and sum
            let meet = enumerate(&u.intersect(&v).map_err(|e| e.to_string())?);
            let expect: BTreeSet<u16> = set_u.intersection(&set_v).copied().collect();
            if meet != expect {
                return Err("intersection disagrees with enumeration".into());
            }
            let join = enumerate(&u.sum(&v).map_err(|e| e.to_string())?);
            let mut expect = BTreeSet::new();
            for &a in &set_u {
                for &b in &set_v {
                    expect.insert(a ^ b);
                }
            }
            if join != expect {
                return Err("sum disagrees with enumeration".into());
            }

            // preimage under a random matrix into a random target space
            let rows = rng.gen_range(1..=12usize);
            let m = random_matrix(&mut rng, field, rows, ambient);
            let cols_w = rng.gen_range(0..=rows);
            let w = image(&random_matrix(&mut rng, field, rows, cols_w));
            let set_w = enumerate(&w);
            let pre = enumerate(&preimage(&m, &w).map_err(|e| e.to_string())?);
            let expect: BTreeSet<u16> =
                (0u32..(1 << ambient)).map(|x| x as u16).filter(|&x| set_w.contains(&apply(&m, x))).collect();
            if pre != expect {
                return Err("preimage disagrees with enumeration".into());
            }

            // kernel is the preimage of zero
            let ker = enumerate(&kernel(&m));
            let expect: BTreeSet<u16> =
                (0u32..(1 << ambient)).map(|x| x as u16).filter(|&x| apply(&m, x) == 0).collect();
            if ker != expect {
                return Err("kernel disagrees with enumeration".into());
            }

            // quotient of the sum by one summand
            let num = u.sum(&v).map_err(|e| e.to_string())?;
            let den = u.clone();
            let q = QuotientSpace::new(num.clone(), den.clone()).map_err(|e| e.to_string())?;
            let set_num = enumerate(&num);
            let set_den = enumerate(&den);
            if set_num.len() % set_den.len() != 0
                || 1usize << q.dim() != set_num.len() / set_den.len()
            {
                return Err("quotient dimension disagrees with enumeration".into());
            }
            // representatives lie in the numerator and are independent
            // modulo the denominator
            let reps = Subspace::span(q.reps());
            let set_reps = enumerate(&reps);
            if !set_reps.is_subset(&set_num) {
                return Err("quotient representative escapes the numerator".into());
            }
            if set_reps.intersection(&set_den).filter(|&&x| x != 0).count() > 0 {
                return Err("quotient representative combination lies in the denominator".into());
            }
            if set_reps.len() != 1usize << q.dim() {
                return Err("quotient representatives are dependent".into());
            }
            Ok(())
        })();
        if let Err(e) = result {
            report("criterion 8 (linear algebra brute force)", Err(format!("instance {instance}: {e}")));
        }
    }
    let elapsed = start.elapsed();
    let ok = elapsed.as_secs() < 30;
    let detail = format!("1000 instances in {:.1}s", elapsed.as_secs_f64());
    report(
        "criterion 8 (linear algebra brute force)",
        if ok { Ok(detail) } else { Err(format!("too slow: {detail}")) },
    );
}
