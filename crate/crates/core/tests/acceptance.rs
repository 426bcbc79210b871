//! Acceptance suite: one [PASS]/[FAIL] line per criterion.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chaincsg::algebra::{bind, classify_faces, BitChain, SolidChain};
use chaincsg::arrangement2d::planar_arrangement;
use chaincsg::arrangement3d::{arrange_models, ArrangeOptions, SpaceArrangement};
use chaincsg::frontend::{
    arrange_assembly, arrange_shapes, check_complex, cuboid_grid, evaluate_expression, evaluate_planar,
    export_obj, import_obj, import_svg, parse_assembly, parse_csg, read_lar3, write_lar3, PipelineOptions,
};
use chaincsg::geometry::AffineMap;
use chaincsg::sparse::{characteristic_matrix, check_exactness, unsigned_boundary2};
use chaincsg::{LarModel, Parallelism};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn cube() -> LarModel {
    cuboid_grid([1, 1, 1]).unwrap()
}

fn exact(a: &chaincsg::SparseSignedMatrix, b: &chaincsg::SparseSignedMatrix) -> bool {
    check_exactness(a, b).map(|x| x.is_exact()).unwrap_or(false)
}

fn faces_used_twice(arr: &SpaceArrangement) -> bool {
    let t = arr.d3_plus.transpose();
    (0..t.ncols()).all(|f| {
        let v: Vec<i8> = t.column(f).map(|x| x.1).collect();
        v.len() == 2 && v[0] + v[1] == 0
    })
}

fn data1() -> Check {
    let ev: Vec<Vec<usize>> = [
        [1, 2],
        [2, 3],
        [4, 5],
        [5, 6],
        [7, 8],
        [8, 9],
        [10, 11],
        [11, 12],
        [1, 10],
        [4, 7],
        [6, 9],
        [3, 12],
        [2, 5],
        [8, 11],
    ]
    .iter()
    .map(|e| e.iter().map(|&x| x - 1).collect())
    .collect();
    let fv: Vec<Vec<usize>> =
        [vec![1, 2, 4, 5, 7, 8, 10, 11], vec![2, 3, 5, 6, 8, 9, 11, 12], vec![4, 5, 6, 7, 8, 9]]
            .iter()
            .map(|f| f.iter().map(|&x| x - 1).collect())
            .collect();
    let k1 = characteristic_matrix(&ev).map_err(err)?;
    let k2 = characteristic_matrix(&fv).map_err(err)?;
    let printed_k1: [[i8; 12]; 14] = [
        [1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0],
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1],
        [1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
        [0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0],
    ];
    let printed_k2t: [[i8; 3]; 12] = [
        [1, 0, 0],
        [1, 1, 0],
        [0, 1, 0],
        [1, 0, 1],
        [1, 1, 1],
        [0, 1, 1],
        [1, 0, 1],
        [1, 1, 1],
        [0, 1, 1],
        [1, 0, 0],
        [1, 1, 0],
        [0, 1, 0],
    ];
    ensure(k1.to_dense() == printed_k1.map(|r| r.to_vec()).to_vec(), "K(EV) differs")?;
    ensure(k2.transpose().to_dense() == printed_k2t.map(|r| r.to_vec()).to_vec(), "K(FV)' differs")?;
    let ef = unsigned_boundary2(&k1, &k2).map_err(err)?;
    let chain = |c: [i32; 3]| -> Result<Vec<usize>, String> {
        let b = ef.mul_vec(&c).map_err(err)?;
        Ok((0..b.len()).filter(|&i| b[i] % 2 != 0).map(|i| i + 1).collect())
    };
    let b1 = chain([1, 1, 1])?;
    let b2 = chain([1, 1, 0])?;
    ensure(b1 == [1, 2, 7, 8, 9, 12], format!("b1 = {b1:?}"))?;
    ensure(b2 == (1..=12).collect::<Vec<_>>(), format!("b2 = {b2:?}"))?;
    Ok(format!("b1 {b1:?}"))
}

fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Vec<([f64; 2], [f64; 2])> {
    vec![([x0, y0], [x1, y0]), ([x1, y0], [x1, y1]), ([x1, y1], [x0, y1]), ([x0, y1], [x0, y0])]
}

fn two_rectangles() -> Check {
    let a = rect(0.0, 0.0, 2.0, 2.0);
    let b = rect(1.0, 1.0, 3.0, 3.0);
    let segs: Vec<_> = a.iter().chain(&b).copied().collect();
    let arr = planar_arrangement(&segs, 1e-9).map_err(err)?;
    let m = classify_faces(&arr, &[a, b]).map_err(err)?;
    ensure(m.natoms() == 3, format!("{} bounded faces", m.natoms()))?;

    // rows are (Omega, A, B); order the cells as c1 = outer, then A only,
    // A and B, B only
    let wanted = [[true, false, false], [false, true, false], [false, true, true], [false, false, true]];
    let mut order = Vec::new();
    for w in &wanted {
        let hits: Vec<usize> = (0..=m.natoms()).filter(|&r| m.row(r) == w.to_vec()).collect();
        ensure(hits.len() == 1, format!("row {w:?} found {} times", hits.len()))?;
        order.push(hits[0]);
    }

    let names = vec!["A".to_string(), "B".to_string()];
    let cols = bind(&m, &names).map_err(err)?;
    let table: [(&str, [u8; 4]); 16] = [
        ("(+ A (! A))", [1, 1, 1, 1]),
        ("A", [0, 1, 1, 0]),
        ("B", [0, 0, 1, 1]),
        ("(+ A B)", [0, 1, 1, 1]),
        ("(! (+ A B))", [1, 0, 0, 0]),
        ("(- A B)", [0, 1, 0, 0]),
        ("(* A B)", [0, 0, 1, 0]),
        ("(- B A)", [0, 0, 0, 1]),
        ("(+ (- A B) (- B A))", [0, 1, 0, 1]),
        ("(! (- A B))", [1, 0, 1, 1]),
        ("(! B)", [1, 1, 0, 0]),
        ("(! (- B A))", [1, 1, 1, 0]),
        ("(! A)", [1, 0, 0, 1]),
        ("(! (+ (- A B) (- B A)))", [1, 0, 1, 0]),
        ("(! (* A B))", [1, 1, 0, 1]),
        ("(- A A)", [0, 0, 0, 0]),
    ];
    let mut seen = std::collections::HashSet::new();
    for (text, expected) in table {
        let e = parse_csg(text).map_err(err)?;
        let s = SolidChain::evaluate(&e, &cols, Parallelism::Sequential).map_err(err)?;
        let got: Vec<u8> =
            order.iter().map(|&r| if r == 0 { s.outer as u8 } else { s.atoms.get(r - 1) as u8 }).collect();
        ensure(got == expected, format!("{text}: {got:?} != {expected:?}"))?;
        seen.insert(got);
    }
    ensure(seen.len() == 16, "the 16 elements are not distinct")?;

    let p = arrange_shapes(
        &import_svg(
            r#"<svg><rect id="A" x="0" y="0" width="2" height="2"/><rect id="B" x="1" y="1" width="2" height="2"/></svg>"#,
        )
        .map_err(err)?,
        1e-9,
    )
    .map_err(err)?;
    let diff = evaluate_planar(&p, &parse_csg("(- A B)").map_err(err)?).map_err(err)?;
    ensure(diff.selected.count_ones() == 1, format!("A - B has {} faces", diff.selected.count_ones()))?;
    Ok("16 elements match".into())
}

const THREE_CUBES: &str = "
    (name A (cuboid 1 1 1))
    (t 0.3 0.4 0.25) (r pi/5 0 0) (r 0 0 pi/12)
    (name B (cuboid 1 1 1))
    (t -0.2 0.4 -0.2) (r 0 pi/5 0) (r 0 pi/12 0)
    (name C (cuboid 1 1 1))";

fn three_cubes() -> Check {
    let start = Instant::now();
    let a = parse_assembly(THREE_CUBES, None).map_err(err)?;
    let c = arrange_assembly(&a, &PipelineOptions::default()).map_err(err)?;
    let n = c.matrix.natoms();
    let mut rows: Vec<String> =
        (0..=n).map(|r| c.matrix.row(r).iter().map(|&b| if b { '1' } else { '0' }).collect()).collect();
    rows.sort();
    let expected = ["0001", "0010", "0011", "0100", "0101", "0110", "0111", "1000"];
    ensure(rows == expected, format!("classification rows {rows:?}"))?;

    let diff = parse_csg("(- A B C)").map_err(err)?;
    let cols = bind(&c.matrix, &c.names).map_err(err)?;
    let d = SolidChain::evaluate(&diff, &cols, Parallelism::Auto).map_err(err)?;
    ensure(d.atoms.count_ones() == 1, format!("A - B - C has {} atoms", d.atoms.count_ones()))?;

    let (report, mesh) =
        evaluate_expression(&c, &parse_csg("(+ A B C)").map_err(err)?, Parallelism::Auto).map_err(err)?;
    let b = SolidChain::evaluate(&parse_csg("(+ A B C)").map_err(err)?, &cols, Parallelism::Auto)
        .and_then(|s| s.boundary(c.arrangement.d3()))
        .map_err(err)?;
    let nnz = b.iter().filter(|&&x| x != 0).count();
    ensure(nnz == 21, format!("union boundary has {nnz} faces"))?;
    ensure(report.boundary_counts == [38, 57, 21], format!("counts {:?}", report.boundary_counts))?;
    ensure(report.euler == 2, format!("euler {}", report.euler))?;
    ensure(report.boundary_is_cycle, "union boundary is not a cycle")?;
    ensure(mesh.is_closed(), "union mesh is not closed")?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), format!("took {elapsed:?}"))?;
    Ok(format!("counts {:?}, union {:?}", c.arrangement.counts(), report.boundary_counts))
}

fn random_scene(rng: &mut ChaCha8Rng) -> Vec<LarModel> {
    let n = rng.gen_range(2..=4);
    let rotated = rng.gen_bool(0.5);
    (0..n)
        .map(|_| {
            let s: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.5..1.5));
            let t: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.0..1.0));
            let mut m = AffineMap::translation(t[0], t[1], t[2]);
            if rotated {
                let r: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-PI..PI));
                m = m.then_after(&AffineMap::rotation(r[0], r[1], r[2]));
            }
            m = m.then_after(&AffineMap::scaling(s[0], s[1], s[2]));
            cube().transformed(&m)
        })
        .collect()
}

fn random_scenes() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut total_atoms = 0;
    for k in 0..50 {
        let models = random_scene(&mut rng);
        let run = |parallelism| arrange_models(&models, &ArrangeOptions { eps: 1e-6, parallelism });
        let a = run(Parallelism::Auto).map_err(|e| format!("scene {k}: {e}"))?;
        let s = run(Parallelism::Sequential).map_err(|e| format!("scene {k}: {e}"))?;
        ensure(exact(&a.d1, &a.d2), format!("scene {k}: d1 d2 != 0"))?;
        ensure(exact(&a.d2, a.d3()), format!("scene {k}: d2 d3 != 0"))?;
        ensure(exact(&a.d2, &a.d3_plus), format!("scene {k}: a shell is not a cycle"))?;
        ensure(faces_used_twice(&a), format!("scene {k}: a face is not used twice"))?;
        let same = a.v == s.v
            && a.ev == s.ev
            && a.d1 == s.d1
            && a.d2 == s.d2
            && a.d3_plus == s.d3_plus
            && *a.d3() == *s.d3();
        ensure(same, format!("scene {k}: parallel and sequential runs differ"))?;
        total_atoms += a.natoms();
    }
    Ok(format!("{total_atoms} atoms over 50 scenes"))
}

fn concentric_cubes() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let maps: Vec<AffineMap> = (0..3)
        .map(|_| {
            let r: [f64; 3] = std::array::from_fn(|_| rng.gen_range(-PI..PI));
            AffineMap::rotation(r[0], r[1], r[2]).then_after(&AffineMap::translation(-0.5, -0.5, -0.5))
        })
        .collect();
    let models: Vec<LarModel> = maps.iter().map(|m| cube().transformed(m)).collect();
    let arr = arrange_models(&models, &ArrangeOptions::default()).map_err(err)?;
    let atoms = arr.atoms(1, Parallelism::Auto).map_err(err)?;
    let soups: Vec<_> =
        models.iter().map(chaincsg::algebra::model_soup).collect::<Result<_, _>>().map_err(err)?;
    let matrix = chaincsg::algebra::classify_atoms(&atoms, &soups, 1, Parallelism::Auto).map_err(err)?;

    if arr.all_cells_contractible() {
        ensure(arr.euler_with_outer() == 0, format!("V - E + F - C = {}", arr.euler_with_outer()))?;
    }
    let mut union = BitChain::zeros(matrix.natoms());
    for j in 0..3 {
        union = union.or(&matrix.solid(j)).map_err(err)?;
    }
    ensure(union.count_ones() == matrix.natoms(), "solid columns do not cover the atoms")?;
    let mut inter = BitChain::ones(matrix.natoms());
    for j in 0..3 {
        inter = inter.and(&matrix.solid(j)).map_err(err)?;
    }
    ensure(inter.any(), "intersection is empty")?;
    let inverses: Vec<AffineMap> = maps.iter().map(|m| m.inverse()).collect::<Result<_, _>>().map_err(err)?;
    for k in inter.ones_iter() {
        let w = atoms[k].witness;
        for inv in &inverses {
            let p = inv.apply(w);
            ensure(
                p.iter().all(|&x| (0.0..=1.0).contains(&x)),
                format!("witness {w:?} of atom {} is outside a cube", k + 1),
            )?;
        }
    }
    Ok(format!("{} atoms, {} in the intersection", matrix.natoms(), inter.count_ones()))
}

fn nested_cubes() -> Check {
    let big = cube().transformed(&AffineMap::scaling(2.0, 2.0, 2.0));
    let small = cube().transformed(&AffineMap::translation(0.5, 0.5, 0.5));
    let arr = arrange_models(&[big, small], &ArrangeOptions::default()).map_err(err)?;
    ensure(arr.natoms() == 2, format!("{} atoms", arr.natoms()))?;
    let shell = (0..2).find(|&k| arr.d3().column_nnz(k) == 12).ok_or("no atom with 12 faces")?;
    let col: Vec<i32> = (0..arr.d3().ncols()).map(|k| (k == shell) as i32).collect();
    let b = arr.d3().mul_vec(&col).map_err(err)?;
    let db = arr.d2.mul_vec(&b).map_err(err)?;
    ensure(db.iter().all(|&x| x == 0), "shell column is not a cycle")?;
    Ok("shell with 12 faces".into())
}

fn random_bits(rng: &mut ChaCha8Rng, len: usize) -> BitChain {
    let bools: Vec<bool> = (0..len).map(|_| rng.gen()).collect();
    BitChain::from_bools(&bools)
}

fn bit_laws() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..10_000 {
        let len = rng.gen_range(1..=64);
        let (a, b) = (random_bits(&mut rng, len), random_bits(&mut rng, len));
        let or = a.or(&b).map_err(err)?;
        let and = a.and(&b).map_err(err)?;
        ensure(or.not() == a.not().and(&b.not()).map_err(err)?, format!("De Morgan (or), case {i}"))?;
        ensure(and.not() == a.not().or(&b.not()).map_err(err)?, format!("De Morgan (and), case {i}"))?;
        ensure(
            a.or(&a).map_err(err)? == a && a.and(&a).map_err(err)? == a,
            format!("idempotence, case {i}"),
        )?;
        ensure(a.or(&and).map_err(err)? == a, format!("absorption (or), case {i}"))?;
        ensure(a.and(&or).map_err(err)? == a, format!("absorption (and), case {i}"))?;
        ensure(
            a.and_not(&b).map_err(err)? == a.and(&b.not()).map_err(err)?,
            format!("difference, case {i}"),
        )?;
    }
    Ok("10000 pairs".into())
}

fn round_trips() -> Check {
    let m = cube().transformed(&AffineMap::rotation(0.3, 0.2, 0.1));
    let back = LarModel::parse_lar(&m.to_lar_string()).map_err(err)?;
    ensure(
        (back.v.len(), back.ev.len(), back.faces().len()) == (m.v.len(), m.ev.len(), m.faces().len()),
        "LAR model counts changed",
    )?;

    let a = parse_assembly(THREE_CUBES, None).map_err(err)?;
    let c = arrange_assembly(&a, &PipelineOptions::default()).map_err(err)?;
    let c2 = read_lar3(&write_lar3(&c), Parallelism::Auto).map_err(err)?;
    ensure(c.arrangement.counts() == c2.arrangement.counts(), "LAR3 counts changed")?;
    ensure(c.matrix == c2.matrix && c.names == c2.names, "LAR3 classification changed")?;
    let r1 = check_complex(&c).map_err(err)?;
    let r2 = check_complex(&c2).map_err(err)?;
    ensure(r2.ok() && r1.shells == r2.shells, "LAR3 invariants changed")?;

    let (_, mesh) =
        evaluate_expression(&c2, &parse_csg("(+ A B C)").map_err(err)?, Parallelism::Auto).map_err(err)?;
    let obj = import_obj(&export_obj(&mesh)).map_err(err)?;
    ensure(
        (obj.v.len(), obj.tris.len()) == (mesh.v.len(), mesh.tris.len()) && obj.is_closed(),
        "OBJ counts changed",
    )?;

    let svg = r#"<svg xmlns="http://www.w3.org/2000/svg">
        <rect id="box" x="0" y="0" width="10" height="10"/>
        <polygon id="tri" points="1,1 4,1 2.5,4"/>
        <rect id="sq" x="6" y="6" width="2" height="2"/>
    </svg>"#;
    let p = arrange_shapes(&import_svg(svg).map_err(err)?, 1e-9).map_err(err)?;
    let r = evaluate_planar(&p, &parse_csg("(- box tri sq)").map_err(err)?).map_err(err)?;
    let euler = r.complex.component_euler();
    ensure(euler.iter().all(|&x| x == 2), format!("component V - E + F = {euler:?}"))?;
    ensure(r.selected.count_ones() == 1, "box minus shapes is not one face")?;
    Ok(format!("planar components {euler:?}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("1 characteristic matrices and boundary chains", data1),
        ("2 two rectangles and their 16 elements", two_rectangles),
        ("3 three cubes", three_cubes),
        ("4 random box scenes", random_scenes),
        ("5 rotated concentric cubes", concentric_cubes),
        ("6 nested cubes", nested_cubes),
        ("7 bit chain laws", bit_laws),
        ("8 I/O round trips", round_trips),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed().as_secs_f64();
        match r {
            Ok(info) => println!("[PASS] {name}: {info} ({t:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name}: {why} ({t:.2}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
