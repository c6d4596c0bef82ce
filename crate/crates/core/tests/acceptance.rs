//! One pass/fail line per acceptance criterion, all at exact equality.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use relext::dga::CommAlgebra;
use relext::gmodule::{GModule, Side};
use relext::group::FiniteGroup;
use relext::group_cohomology::{group_cohomology, GroupMonad, Via};
use relext::groupoid::{groupoid_cohomology, restrict_to_vertex, GroupoidModule, TransitiveGroupoid};
use relext::lie::{
    cce_complex, contraction, cosimplicial_mc, equivariant_ext, lie_derivative, cone, CgComplex, LieAlgebra,
    LieModule, ModuleAlgebra,
};
use relext::lie_rinehart::{
    cone_extension, functor_f_homology, induced_mca_map, lr_diagonal, lr_equivariant_cohomology,
    product_multiplication_map, validate_comorphism, AclModule, Comorphism, LieRinehartAlgebra, LrExtension,
    LrModule,
};
use relext::monad::{check_monad_laws, IdentityMonad, Monad, PlainObject, DEFAULT_SIZE_LIMIT};
use relext::verify::monad_isomorphism_findings;
use relext::{Error, Field, Result, SparseMatrix, SparseVec};

type Outcome = std::result::Result<(), String>;

type Check = fn() -> Outcome;

/// A named piece of invalid data and the error it must raise.
type Fixture = (&'static str, Result<()>, fn(&Error) -> bool);

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

fn ok<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn within(t: Instant, limit: u64, what: &str) -> Outcome {
    let e = t.elapsed();
    if e <= Duration::from_secs(limit) {
        Ok(())
    } else {
        Err(format!("{what} took {e:?}, limit {limit} s"))
    }
}

fn q() -> Field {
    Field::Rational
}

fn criterion_1() -> Outcome {
    for p in [2u64, 3] {
        let f = ok(Field::prime(p))?;
        let v = GModule::trivial(Arc::new(FiniteGroup::cyclic(p as usize)), f, Side::Right, 1);
        for via in [Via::T, Via::U] {
            let t = Instant::now();
            let dims = ok(group_cohomology(&v, 4, via))?.dims;
            expect(&format!("H(Z/{p}; F{p}) via {via:?}"), dims, vec![1; 5])?;
            within(t, 5, &format!("Z/{p} via {via:?}"))?;
        }
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let t = Instant::now();
    let corpus = FiniteGroup::corpus_up_to_12();
    if corpus.iter().map(|g| g.order()).max() != Some(12) {
        return Err("corpus does not reach order 12".into());
    }
    for g in corpus {
        let name = g.name().to_string();
        let v = GModule::trivial(Arc::new(g), q(), Side::Right, 1);
        expect(&format!("H(G; Q) for {name}"), ok(group_cohomology(&v, 3, Via::U))?.dims, vec![1, 0, 0, 0])?;
    }
    within(t, 60, "corpus")
}

fn all_pass(v: &GModule, top: usize) -> Outcome {
    let findings = ok(monad_isomorphism_findings(v, top))?;
    match findings.iter().find(|f| !f.passed) {
        None => Ok(()),
        Some(f) => Err(format!("{}: {:?}", f.name, f.detail)),
    }
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    all_pass(&GModule::regular(z2, q(), Side::Right), 3)?;
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    all_pass(&ok(GModule::standard_s3(s3, q(), Side::Right))?, 2)?;
    within(t, 30, "monad isomorphism checks")
}

fn criterion_4() -> Outcome {
    let t = Instant::now();
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    all_pass(&ok(GModule::standard_s3(s3, q(), Side::Right))?, 3)?;
    within(t, 30, "universal objects for S3")
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let sl2 = Arc::new(LieAlgebra::sl2(q()));
    let c = ok(cce_complex(&sl2, &LieModule::trivial(sl2.clone(), 1)))?;
    expect("H(sl2; Q)", ok(c.cohomology_dims())?, vec![1, 0, 0, 1])?;
    for n in 0..=4usize {
        let g = Arc::new(LieAlgebra::abelian(q(), n));
        let c = ok(cce_complex(&g, &LieModule::trivial(g.clone(), 1)))?;
        let binom: Vec<usize> = (0..=n).map(|p| (0..p).fold(1, |acc, i| acc * (n - i) / (i + 1))).collect();
        expect(&format!("H(abelian {n})"), ok(c.cohomology_dims())?, binom)?;
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(2024);
    for _ in 0..5 {
        // Construction checks antisymmetry and the Jacobi identity.
        let g = Arc::new(common::random_lie_algebra(&mut rng, q()));
        let v = LieModule::adjoint(g.clone());
        let c = ok(cce_complex(&g, &v))?;
        for _ in 0..4 {
            let x: SparseVec = (0..g.dim())
                .map(|k| (k, q().from_i64(rng.gen_range(-3..=3))))
                .filter(|e| !e.1.is_zero())
                .collect();
            let i = contraction(&c, &x);
            expect("d i_X + i_X d = λ_X", c.space().d.anticommutator(&i), ok(lie_derivative(&g, &v, &x))?)?;
        }
    }
    within(t, 10, "Chevalley-Eilenberg checks")
}

fn criterion_6() -> Outcome {
    let ab = Arc::new(LieAlgebra::abelian(q(), 1));
    let want = vec![1, 0, 1, 0, 1, 0, 1];
    expect("Ext(abelian 1)", ok(equivariant_ext(&ab, &CgComplex::trivial(ab.clone(), 1), 6))?, want.clone())?;
    expect("cosimplicial MC (abelian 1)", ok(cosimplicial_mc(&ab, None, 6))?, want)?;
    let t = Instant::now();
    let sl2 = Arc::new(LieAlgebra::sl2(q()));
    let want = vec![1, 0, 0, 0, 1, 0];
    expect("Ext(sl2)", ok(equivariant_ext(&sl2, &CgComplex::trivial(sl2.clone(), 1), 5))?, want.clone())?;
    expect("cosimplicial MC (sl2)", ok(cosimplicial_mc(&sl2, None, 5))?, want)?;
    within(t, 120, "sl2")
}

fn criterion_7() -> Outcome {
    let t = Instant::now();
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let f2 = ok(Field::prime(2))?;
    let om = Arc::new(ok(TransitiveGroupoid::gauge(3, z2.clone()))?);
    let sign = ok(GModule::character(z2, f2, Side::Left, &[1, -1]))?;
    let zeta = ok(GroupoidModule::induced(om, &sign))?;
    let r = ok(restrict_to_vertex(&zeta, 0, 3))?;
    expect("groupoid vs vertex group", &r.groupoid_dims, &r.vertex_dims)?;
    expect("groupoid table", r.groupoid_dims.clone(), vec![1, 1, 1, 1])?;
    expect("restriction quasi-isomorphism failure", r.quasi_iso_failure, None)?;
    let pair = Arc::new(ok(TransitiveGroupoid::gauge(3, Arc::new(FiniteGroup::trivial())))?);
    let v = GModule::trivial(pair.vertex_group().clone(), q(), Side::Left, 1);
    let zeta = ok(GroupoidModule::induced(pair, &v))?;
    expect("pair groupoid", ok(groupoid_cohomology(&zeta.object(0), 3))?, vec![1, 0, 0, 0])?;
    within(t, 30, "groupoid checks")
}

fn cubic_crossed_product() -> Result<LieRinehartAlgebra> {
    let g = Arc::new(LieAlgebra::affine_line(q()));
    let e = SparseMatrix::from_i64(q(), &[vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 2]]);
    let f = SparseMatrix::from_i64(q(), &[vec![0, 0, 0], vec![0, 0, 0], vec![0, 1, 0]]);
    let ma = ModuleAlgebra::new(&g, CommAlgebra::truncated_polynomial(q(), 3), vec![e, f])?;
    LieRinehartAlgebra::crossed_product(&g, &ma)
}

fn criterion_8() -> Outcome {
    let t = Instant::now();
    let instances = [
        LieRinehartAlgebra::from_lie(&LieAlgebra::sl2(q())),
        LieRinehartAlgebra::euler_dual_numbers(q()),
        ok(cubic_crossed_product())?,
    ];
    for lr in instances {
        let lr = Arc::new(lr);
        let diag = ok(lr_diagonal(&lr))?;
        ok(validate_comorphism(&diag))?;
        expect(
            &format!("induced map of the diagonal for {}", lr.name()),
            ok(induced_mca_map(&diag))?,
            ok(product_multiplication_map(&lr))?,
        )?;
    }
    for g in [LieAlgebra::sl2(q()), LieAlgebra::heisenberg(q())] {
        expect("cone of split extension", ok(cone_extension(&LrExtension::split(&g)))?.algebra, ok(cone(&g))?)?;
    }
    let a = CommAlgebra::dual_numbers(q());
    let sub = Arc::new(LieRinehartAlgebra::abelian_over(&a, 1));
    let e = ok(LrExtension::identity_of(sub.clone()))?;
    expect("functor F", ok(functor_f_homology(&e, &ok(LrModule::algebra(sub))?))?, vec![2, 2])?;
    for (g, d, want) in [
        (LieAlgebra::abelian(q(), 1), 6, vec![1, 0, 1, 0, 1, 0, 1]),
        (LieAlgebra::sl2(q()), 5, vec![1, 0, 0, 0, 1, 0]),
    ] {
        let n = ok(AclModule::ground(Arc::new(LieRinehartAlgebra::from_lie(&g))))?;
        expect(&format!("Lie-Rinehart equivariant cohomology of {}", g.name()), ok(lr_equivariant_cohomology(&n, d))?, want)?;
    }
    within(t, 60, "Lie-Rinehart layer")
}

/// The identity monad with its unit doubled.
struct DoubledUnit;

impl Monad for DoubledUnit {
    type Obj = PlainObject;

    fn name(&self) -> String {
        "Id with unit 2".into()
    }

    fn apply(&self, x: &PlainObject) -> Result<PlainObject> {
        IdentityMonad.apply(x)
    }

    fn apply_morphism(&self, f: &SparseMatrix, a: &PlainObject, b: &PlainObject) -> SparseMatrix {
        IdentityMonad.apply_morphism(f, a, b)
    }

    fn unit(&self, x: &PlainObject) -> SparseMatrix {
        IdentityMonad.unit(x).scale(&x.field.from_i64(2))
    }

    fn multiplication(&self, x: &PlainObject) -> SparseMatrix {
        IdentityMonad.multiplication(x)
    }
}

/// The group monad `T` with the multiplication of `U`.
struct MixedGroupMonad(GroupMonad, GroupMonad);

impl Monad for MixedGroupMonad {
    type Obj = GModule;

    fn name(&self) -> String {
        "T with the multiplication of U".into()
    }

    fn apply(&self, x: &GModule) -> Result<GModule> {
        self.0.apply(x)
    }

    fn apply_morphism(&self, f: &SparseMatrix, a: &GModule, b: &GModule) -> SparseMatrix {
        self.0.apply_morphism(f, a, b)
    }

    fn unit(&self, x: &GModule) -> SparseMatrix {
        self.0.unit(x)
    }

    fn multiplication(&self, x: &GModule) -> SparseMatrix {
        self.1.multiplication(x)
    }
}

fn sl2_table(perturb: Option<(usize, usize, i64)>) -> Vec<Vec<SparseVec>> {
    let g = LieAlgebra::sl2(q());
    let mut table: Vec<Vec<SparseVec>> = (0..3).map(|i| (0..3).map(|j| g.bracket(i, j).clone()).collect()).collect();
    if let Some((i, j, c)) = perturb {
        table[i][j] = vec![(0, q().from_i64(c))];
        table[j][i] = vec![(0, q().from_i64(-c))];
    }
    table
}

fn criterion_9() -> Outcome {
    // Cayley tables.
    let mut fixtures: Vec<Fixture> = vec![(
        "non-associative table",
        FiniteGroup::from_table("bad", vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]]).map(|_| ()),
        |e| matches!(e, Error::Associativity(..)) && e.to_string().starts_with("associativity violated at ("),
    )];
    fixtures.push((
        "table without identity",
        FiniteGroup::from_table("bad", vec![vec![0, 0], vec![0, 0]]).map(|_| ()),
        |e| matches!(e, Error::IdentityLaw(_) | Error::Associativity(..)),
    ));
    fixtures.push((
        "monoid without inverses",
        FiniteGroup::from_table("bad", vec![vec![0, 1], vec![1, 1]]).map(|_| ()),
        |e| matches!(e, Error::InverseLaw(1)),
    ));
    fixtures.push((
        "entry out of range",
        FiniteGroup::from_table("bad", vec![vec![0, 2], vec![1, 0]]).map(|_| ()),
        |e| matches!(e, Error::Validation(_) | Error::DimensionMismatch(_)),
    ));
    // Module data.
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let two = SparseMatrix::from_i64(q(), &[vec![2]]);
    fixtures.push((
        "group action that is not a homomorphism",
        GModule::new(z2, q(), Side::Right, vec![SparseMatrix::identity(1, q()), two]).map(|_| ()),
        |e| matches!(e, Error::ActionLaw(_)),
    ));
    // Structure constants.
    fixtures.push((
        "perturbed sl2 constant",
        LieAlgebra::from_table("bad", q(), sl2_table(Some((0, 1, 1)))).map(|_| ()),
        |e| matches!(e, Error::JacobiFailure(..)),
    ));
    let mut table = sl2_table(None);
    table[0][1] = vec![(2, q().from_i64(2))];
    fixtures.push((
        "non-antisymmetric bracket",
        LieAlgebra::from_table("bad", q(), table).map(|_| ()),
        |e| matches!(e, Error::AntisymmetryFailure(0, 1) | Error::AntisymmetryFailure(1, 0)),
    ));
    let aff = Arc::new(LieAlgebra::affine_line(q()));
    let one = SparseMatrix::identity(1, q());
    fixtures.push((
        "Lie module that is not a representation",
        LieModule::new(aff, vec![0], None, vec![one.clone(), one]).map(|_| ()),
        |e| matches!(e, Error::ActionLaw(_)),
    ));
    let dual = CommAlgebra::dual_numbers(q());
    let not_derivation = SparseMatrix::from_i64(q(), &[vec![1, 0], vec![0, 0]]);
    fixtures.push((
        "anchor that is not a derivation",
        LieRinehartAlgebra::new("bad", dual.clone(), vec![not_derivation], &[]).map(|_| ()),
        |e| matches!(e, Error::AnchorNotDerivation { generator: 0, .. }),
    ));
    let euler = SparseMatrix::from_i64(q(), &[vec![0, 0], vec![0, 1]]);
    fixtures.push((
        "anchor that is not a Lie map",
        LieRinehartAlgebra::new("bad", dual.clone(), vec![euler.clone(), euler], &[(0, 1, vec![dual.unit().clone(), vec![]])])
            .map(|_| ()),
        |e| matches!(e, Error::LeibnizFailure(_)),
    ));
    let cubic = CommAlgebra::truncated_polynomial(q(), 3);
    let mut mult = cubic.table().to_vec();
    mult[2][2] = vec![(0, q().one())];
    fixtures.push((
        "commutative algebra with a non-associative product",
        CommAlgebra::new(q(), mult, cubic.unit().clone()).map(|_| ()),
        |e| matches!(e, Error::Associativity(..) | Error::IdentityLaw(_)),
    ));
    // Comorphism data.
    let twice = SparseMatrix::from_i64(q(), &[vec![0, 0], vec![0, 2]]);
    let doubled = Arc::new(ok(LieRinehartAlgebra::new("2 Euler", dual, vec![twice], &[]))?);
    let honest = ok(lr_diagonal(&Arc::new(LieRinehartAlgebra::euler_dual_numbers(q()))))?;
    fixtures.push((
        "diagonal with perturbed anchor",
        validate_comorphism(&Comorphism { source: doubled, ..honest }).map(|_| ()),
        |e| matches!(e, Error::ConditionIFailure(_)),
    ));
    let mut diag = ok(lr_diagonal(&Arc::new(LieRinehartAlgebra::from_lie(&LieAlgebra::sl2(q())))))?;
    diag.big_phi[0][0] = vec![(0, q().from_i64(2))];
    fixtures.push((
        "diagonal with perturbed bracket data",
        validate_comorphism(&diag).map(|_| ()),
        |e| matches!(e, Error::ConditionIIFailure(_)),
    ));
    // Monad data.
    fixtures.push((
        "identity monad with doubled unit",
        check_monad_laws(&DoubledUnit, &PlainObject::new(q(), 2), DEFAULT_SIZE_LIMIT),
        |e| matches!(e, Error::MonadLawViolation { .. }),
    ));
    let z3 = Arc::new(FiniteGroup::cyclic(3));
    let mixed = MixedGroupMonad(GroupMonad::monad_t(z3.clone()), GroupMonad::monad_u(z3.clone()));
    fixtures.push((
        "group monad T with the multiplication of U",
        check_monad_laws(&mixed, &GModule::trivial(z3, q(), Side::Right, 1), DEFAULT_SIZE_LIMIT),
        |e| matches!(e, Error::MonadLawViolation { .. }),
    ));
    let total = fixtures.len();
    let mut failures = Vec::new();
    for (name, result, accepts) in fixtures {
        match result {
            Ok(()) => failures.push(format!("{name}: accepted")),
            Err(e) if !accepts(&e) => failures.push(format!("{name}: wrong error {e}")),
            Err(e) if e.to_string().trim().is_empty() => failures.push(format!("{name}: no witness")),
            Err(_) => {}
        }
    }
    if failures.is_empty() {
        println!("    {total}/{total} negative fixtures rejected with the declared error");
        Ok(())
    } else {
        Err(failures.join("; "))
    }
}

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("group cohomology of Z/2 and Z/3 via T and U", criterion_1),
        ("rational cohomology vanishes for groups of order <= 12", criterion_2),
        ("monad isomorphism Theta and its factorization", criterion_3),
        ("EG, (EG)^left and Map(EG, V) for S3 through degree 3", criterion_4),
        ("Chevalley-Eilenberg values and the Cartan formula", criterion_5),
        ("infinitesimal equivariant cohomology", criterion_6),
        ("groupoid cohomology and restriction to the vertex group", criterion_7),
        ("Lie-Rinehart diagonal, cone, F and equivariant cohomology", criterion_8),
        ("negative fixtures", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {}: PASS ({secs:.2} s) {name}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({secs:.2} s) {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
