//! Acceptance suite. One test per criterion; each prints a single
//! "criterion N (...): PASS|FAIL" line (run with --nocapture to see the
//! lines on success). Every comparison is exact; nothing here tolerates
//! an approximation.

use std::collections::BTreeSet;
use std::process::Command;

use sandwich_core::chain::root_chain;
use sandwich_core::group::{
    verify_group_axioms, FiniteGroup, GroupElement, GroupLaw, MatrixLaw,
};
use sandwich_core::reflect::ReflectionContext;
use sandwich_core::roots::{RootSet, RootSystem, TypeLabel};
use sandwich_core::sandwich::{
    align, base_weyl_group, hat_weyl, nilradical_center, restrict, verify_axioms,
    verify_axioms_on, verify_relations, Alignment, HatSystem,
};
use sandwich_core::semidirect::{
    associativity_check, build_phi_table, build_semidirect, check_conjugation_twist,
    check_rminus_stability, exact_sequence_check, induced_maps, lift_conjugation_check,
    phi_homomorphism_check, tau_homomorphism_check,
};
use sandwich_core::symplectic::{
    build_phase_space, lift_permutation, mu_isomorphism, s_generator, script_w, PhaseSpace,
};
use sandwich_core::{ratvec, Rat, RatMat, RatVec};

const CAP: usize = 1_000_000;

/// Runs one criterion body, prints its verdict line, then asserts.
fn run_criterion(label: &str, body: impl FnOnce() -> anyhow::Result<Vec<String>>) {
    let failures = match body() {
        Ok(f) => f,
        Err(e) => vec![format!("could not even run: {e:#}")],
    };
    if failures.is_empty() {
        println!("{label}: PASS");
    } else {
        println!("{label}: FAIL");
        for f in &failures {
            println!("  - {f}");
        }
    }
    assert!(failures.is_empty(), "{label} failed: {failures:?}");
}

fn expect(failures: &mut Vec<String>, cond: bool, msg: impl FnOnce() -> String) {
    if !cond {
        failures.push(msg());
    }
}

/// The ambient-C family member with an M-plane model: C_{M+1} aligned at
/// h* = (1, 0, ..., 0).
fn instance(m: usize) -> anyhow::Result<(Alignment<Rat>, HatSystem<Rat>)> {
    let rank = m + 1;
    let system = RootSystem::<Rat>::build(TypeLabel::C, rank)?;
    let mut h = vec![0i64; rank];
    h[0] = 1;
    let a = align(system, ratvec(&h))?;
    let hat = restrict(&a)?;
    Ok((a, hat))
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn criterion_1_class_c_construction() {
    run_criterion("criterion 1 (class-C construction)", || {
        let mut f = Vec::new();
        for m in 1..=6 {
            let (a, hat) = instance(m)?;
            let dim = a.ambient().dim();
            let center = nilradical_center(&a);
            let mut minus_two_e1 = vec![0i64; dim];
            minus_two_e1[0] = -2;
            expect(&mut f, center.center_roots.len() == 1, || {
                format!("M={m}: centre has {} roots, expected 1", center.center_roots.len())
            });
            expect(
                &mut f,
                center.center_roots.first() == Some(&ratvec(&minus_two_e1)),
                || format!("M={m}: centre root is not -2e1"),
            );
            expect(&mut f, center.dimension == 1 && center.is_class_c, || {
                format!("M={m}: centre dimension {} is not a line", center.dimension)
            });
            expect(&mut f, a.r_minus().len() == 2 * m + 1, || {
                format!("M={m}: |R-| = {}, expected {}", a.r_minus().len(), 2 * m + 1)
            });
            expect(&mut f, hat.pi_hat().len() == m && hat.m() == m, || {
                format!("M={m}: {} simple hat roots, expected {m}", hat.pi_hat().len())
            });
        }
        // Negative controls: a B3 and an A2 alignment whose centres are
        // too big for the class.
        let b3 = align(
            RootSystem::<Rat>::build(TypeLabel::B, 3)?,
            ratvec(&[1, 0, 0]),
        )?;
        let b3_center = nilradical_center(&b3);
        expect(
            &mut f,
            !b3_center.is_class_c && b3_center.dimension == 5,
            || format!("B3 centre dimension {} (expected 5, rejected)", b3_center.dimension),
        );
        let a2 = align(
            RootSystem::<Rat>::build(TypeLabel::A, 2)?,
            ratvec(&[1, 0, 0]),
        )?;
        let a2_center = nilradical_center(&a2);
        expect(
            &mut f,
            !a2_center.is_class_c && a2_center.dimension == 2,
            || format!("A2 centre dimension {} (expected 2, rejected)", a2_center.dimension),
        );
        Ok(f)
    });
}

#[test]
fn criterion_2_root_axioms() {
    run_criterion("criterion 2 (axiom suite)", || {
        let mut f = Vec::new();
        for m in 1..=6 {
            let (a, hat) = instance(m)?;
            let hat_report = verify_axioms(&hat)?;
            for (check, name) in [
                (&hat_report.spans, "spanning basis"),
                (&hat_report.symmetric, "symmetry"),
                (&hat_report.chains_finite, "finite chains"),
                (&hat_report.additive, "pairing additivity"),
                (&hat_report.normalized, "self-pairing 2"),
            ] {
                expect(&mut f, check.pass, || {
                    format!(
                        "M={m}: hat system fails {name}: {}",
                        check.witness.clone().unwrap_or_default()
                    )
                });
            }
            let base_report = verify_axioms_on(a.r_zero(), a.r_zero_simple())?;
            expect(&mut f, base_report.pass(), || {
                format!(
                    "M={m}: R0 fails axioms: {}",
                    base_report.first_witness().unwrap_or_default()
                )
            });
        }
        // Mutation control: deleting one negative root must break the
        // symmetry axiom with a witness naming the orphan.
        let (_, hat) = instance(2)?;
        let doomed = -hat.pi_hat()[0].clone();
        let survivors: Vec<RatVec> = hat
            .phi()
            .iter()
            .filter(|v| **v != doomed)
            .cloned()
            .collect();
        expect(&mut f, survivors.len() == hat.phi().len() - 1, || {
            "mutation did not remove exactly one root".into()
        });
        let mutated = RootSet::new(hat.dim(), survivors)?;
        let report = verify_axioms_on(&mutated, hat.pi_hat())?;
        expect(&mut f, !report.symmetric.pass, || {
            "deleting a negative root left the symmetry axiom passing".into()
        });
        expect(&mut f, report.symmetric.witness.is_some(), || {
            "symmetry failure carries no witness".into()
        });
        Ok(f)
    });
}

/// Applies a reflection (a matrix in basis coordinates) to any vector in
/// the span of the basis.
fn apply(
    ctx: &ReflectionContext<Rat>,
    r: &GroupElement<Rat>,
    v: &RatVec,
) -> anyhow::Result<RatVec> {
    Ok(ctx.ambient(&r.matrix().mul_vec(&ctx.coords(v)?)?)?)
}

fn reflection_laws(
    tag: &str,
    membership: &RootSet<Rat>,
    basis: &[RatVec],
    f: &mut Vec<String>,
) -> anyhow::Result<()> {
    let ctx = ReflectionContext::new(membership.clone(), basis.to_vec())?;
    let law = ctx.law();
    for alpha in membership.iter() {
        let r = ctx.reflection(alpha)?;
        // Reflections square to the identity.
        expect(f, law.multiply(&r, &r).matrix().is_identity(), || {
            format!("{tag}: reflection at {alpha} is not an involution")
        });
        // ... and permute the membership set.
        let mut images = BTreeSet::new();
        for beta in membership.iter() {
            let image = apply(&ctx, &r, beta)?;
            expect(f, membership.contains(&image), || {
                format!("{tag}: reflection at {alpha} sends {beta} outside the set")
            });
            images.insert(format!("{image}"));
        }
        expect(f, images.len() == membership.len(), || {
            format!("{tag}: reflection at {alpha} is not injective on the set")
        });
        // The chain through beta reverses end for end: the member at
        // offset j lands on the member at offset p - (q + j).
        for beta in membership.iter() {
            let chain = root_chain(membership, beta, alpha)?;
            let (q, p) = (chain.q() as i64, chain.p() as i64);
            for j in -q..=p {
                let got = apply(&ctx, &r, &chain.element_at(j))?;
                let want = chain.element_at(p - (q + j));
                expect(f, got == want, || {
                    format!(
                        "{tag}: chain through {beta} along {alpha} at offset {j}: got {got}, want {want}"
                    )
                });
            }
        }
    }
    Ok(())
}

#[test]
fn criterion_3_reflection_laws() {
    run_criterion("criterion 3 (reflection laws)", || {
        let mut f = Vec::new();
        for rank in [2usize, 3] {
            let system = RootSystem::<Rat>::build(TypeLabel::C, rank)?;
            reflection_laws(
                &format!("C{rank}"),
                system.roots(),
                system.simple_roots(),
                &mut f,
            )?;
        }
        for m in 1..=4 {
            let (_, hat) = instance(m)?;
            reflection_laws(&format!("hat M={m}"), hat.phi(), hat.pi_hat(), &mut f)?;
        }
        Ok(f)
    });
}

#[test]
fn criterion_4_hat_weyl_relations() {
    run_criterion("criterion 4 (hat Weyl relations)", || {
        let mut f = Vec::new();
        for m in 1..=6 {
            let (_, hat) = instance(m)?;
            let w = hat_weyl(&hat, CAP)?;
            expect(&mut f, w.order() == 1 << m, || {
                format!("M={m}: |W| = {}, expected {}", w.order(), 1 << m)
            });
            let rep = verify_relations(&hat, &w)?;
            for (check, name) in [
                (&rep.involutions, "generators square to identity"),
                (&rep.commuting, "generators commute"),
                (&rep.generator_images, "generator images"),
                (&rep.product_is_minus_identity, "generator product is -identity"),
                (&rep.abelian, "group is abelian"),
                (&rep.order_is_two_pow_m, "order is 2^M"),
            ] {
                expect(&mut f, check.pass, || {
                    format!(
                        "M={m}: {name} fails: {}",
                        check.witness.clone().unwrap_or_default()
                    )
                });
            }
        }
        Ok(f)
    });
}

#[test]
fn criterion_5_symplectic_model() {
    run_criterion("criterion 5 (symplectic model)", || {
        let mut f = Vec::new();
        for m in 1..=4 {
            let (a, hat) = instance(m)?;
            let ps = build_phase_space(&hat)?;
            let gens: Vec<GroupElement<Rat>> = (1..=m)
                .map(|i| s_generator(&ps, i))
                .collect::<sandwich_core::Result<_>>()?;
            // Every plane flip preserves the form exactly.
            for (i, s) in gens.iter().enumerate() {
                expect(&mut f, ps.is_symplectic(s.matrix())?, || {
                    format!("M={m}: S_{} does not preserve the form", i + 1)
                });
            }
            // Every lifted permutation preserves the form exactly.
            let w_base = base_weyl_group(&a, CAP)?;
            for im in induced_maps(&a, &hat, &w_base)? {
                let lift = lift_permutation(&ps, im.tau())?;
                expect(&mut f, ps.is_symplectic(lift.matrix())?, || {
                    format!("M={m}: lift of {} does not preserve the form", im.tau())
                });
            }
            // The flip relations: involutions, pairwise commuting, and
            // the full product equal to minus the identity.
            flip_relations(m, &ps, &gens, &mut f)?;
            // The generator assignment extends to a bijective
            // homomorphism from the hat Weyl group onto the flip group,
            // compared table against table.
            let w_hat = hat_weyl(&hat, CAP)?;
            let w_script = script_w(&ps, CAP)?;
            let mu = mu_isomorphism(&hat, &w_hat, &ps, &w_script)?;
            for (check, name) in [
                (&mu.well_defined, "well-defined"),
                (&mu.homomorphism, "a homomorphism"),
                (&mu.bijective, "bijective"),
            ] {
                expect(&mut f, check.pass, || {
                    format!(
                        "M={m}: mu is not {name}: {}",
                        check.witness.clone().unwrap_or_default()
                    )
                });
            }
        }
        Ok(f)
    });
}

fn flip_relations(
    m: usize,
    ps: &PhaseSpace<Rat>,
    gens: &[GroupElement<Rat>],
    f: &mut Vec<String>,
) -> anyhow::Result<()> {
    for (i, s) in gens.iter().enumerate() {
        expect(f, s.matrix().mul_mat(s.matrix())?.is_identity(), || {
            format!("M={m}: S_{} is not an involution", i + 1)
        });
    }
    for (i, s) in gens.iter().enumerate() {
        for (j, t) in gens.iter().enumerate().skip(i + 1) {
            expect(
                f,
                s.matrix().mul_mat(t.matrix())? == t.matrix().mul_mat(s.matrix())?,
                || format!("M={m}: S_{} and S_{} do not commute", i + 1, j + 1),
            );
        }
    }
    let mut product = RatMat::identity(ps.dim());
    for s in gens {
        product = product.mul_mat(s.matrix())?;
    }
    expect(f, product == RatMat::identity(ps.dim()).neg(), || {
        format!("M={m}: product of all flips is not minus the identity")
    });
    Ok(())
}

#[test]
fn criterion_6_induced_action() {
    run_criterion("criterion 6 (induced action)", || {
        let mut f = Vec::new();
        for m in 1..=4 {
            let (a, hat) = instance(m)?;
            let w_base = base_weyl_group(&a, CAP)?;
            expect(&mut f, w_base.order() == (1 << m) * factorial(m), || {
                format!("M={m}: base group order {} is wrong", w_base.order())
            });
            let stability = check_rminus_stability(&a, &w_base)?;
            expect(&mut f, stability.pass, || {
                format!(
                    "M={m}: R- is not stable: {}",
                    stability.witness.clone().unwrap_or_default()
                )
            });
            // induced_action verifies, for every image coordinate, that
            // all members of a fiber project to one and the same hat
            // root, and errors otherwise; a full sweep is the
            // well-definedness proof.
            let maps = induced_maps(&a, &hat, &w_base)?;
            expect(&mut f, maps.len() == w_base.order(), || {
                format!("M={m}: induced maps missing for some elements")
            });
            if m <= 3 {
                let tau_hom = tau_homomorphism_check(&a, &hat, &w_base)?;
                expect(&mut f, tau_hom.pass, || {
                    format!(
                        "M={m}: tau is not a homomorphism: {}",
                        tau_hom.witness.clone().unwrap_or_default()
                    )
                });
            }
        }
        Ok(f)
    });
}

#[test]
fn criterion_7_conjugation_and_phi() {
    run_criterion("criterion 7 (conjugation and phi)", || {
        let mut f = Vec::new();
        for m in 1..=4 {
            let (a, hat) = instance(m)?;
            let ps = build_phase_space(&hat)?;
            let w_base = base_weyl_group(&a, CAP)?;
            let taus: Vec<_> = induced_maps(&a, &hat, &w_base)?
                .into_iter()
                .map(|im| im.tau().clone())
                .collect();
            // Conjugating the i-th flip by a lifted permutation yields
            // the tau(i)-th flip, for every element's tau and every i.
            let conj = lift_conjugation_check(&ps, &taus)?;
            expect(&mut f, conj.pass, || {
                format!(
                    "M={m}: lift conjugation fails: {}",
                    conj.witness.clone().unwrap_or_default()
                )
            });
            if m <= 3 {
                let w_script = script_w(&ps, CAP)?;
                let phi = build_phi_table(&a, &hat, &ps, &w_script, &w_base)?;
                let hom = phi_homomorphism_check(&w_base, &phi)?;
                expect(&mut f, hom.pass, || {
                    format!(
                        "M={m}: phi is not a homomorphism: {}",
                        hom.witness.clone().unwrap_or_default()
                    )
                });
            }
        }
        Ok(f)
    });
}

#[test]
fn criterion_8_semidirect_product() {
    run_criterion("criterion 8 (semidirect product)", || {
        let mut f = Vec::new();
        for m in 1..=4 {
            let (a, hat) = instance(m)?;
            let ps = build_phase_space(&hat)?;
            let w_base = base_weyl_group(&a, CAP)?;
            let w_script = script_w(&ps, CAP)?;
            let sdp = build_semidirect(&a, &hat, &ps, &w_script, &w_base, CAP)?;
            let want = (1 << m) * (1 << m) * factorial(m);
            expect(&mut f, sdp.order() == want, || {
                format!("M={m}: |full group| = {}, expected {want}", sdp.order())
            });
            if m == 2 {
                two_plane_group_laws(&sdp, &w_script, &w_base, &a, &hat, &ps, &mut f)?;
            }
            if m <= 3 {
                let seq = exact_sequence_check(&sdp)?;
                for (check, name) in [
                    (&seq.order_product_ok, "order product"),
                    (&seq.image_equals_kernel, "image equals kernel"),
                    (&seq.image_normal, "normality"),
                    (&seq.splitting_ok, "splitting"),
                ] {
                    expect(&mut f, check.pass, || {
                        format!(
                            "M={m}: exact sequence {name} fails: {}",
                            check.witness.clone().unwrap_or_default()
                        )
                    });
                }
                let twist = check_conjugation_twist(&sdp)?;
                expect(&mut f, twist.pass, || {
                    format!(
                        "M={m}: conjugation does not reproduce the twist: {}",
                        twist.witness.clone().unwrap_or_default()
                    )
                });
            }
        }
        Ok(f)
    });
}

/// The order-32 group in full: exhaustive associativity over all 32^3
/// triples, the identity element, and the closed-form inverse
/// (w, sigma)^-1 = (phi_{sigma^-1}(w^-1), sigma^-1).
fn two_plane_group_laws(
    sdp: &FiniteGroup<sandwich_core::semidirect::SdpLaw>,
    w_script: &FiniteGroup<MatrixLaw<Rat>>,
    w_base: &FiniteGroup<MatrixLaw<Rat>>,
    a: &Alignment<Rat>,
    hat: &HatSystem<Rat>,
    ps: &PhaseSpace<Rat>,
    f: &mut Vec<String>,
) -> anyhow::Result<()> {
    expect(f, sdp.order() == 32, || {
        format!("order {} 2-plane group", sdp.order())
    });
    let assoc = associativity_check(sdp);
    expect(f, assoc.pass, || {
        format!(
            "associativity sweep fails: {}",
            assoc.witness.clone().unwrap_or_default()
        )
    });
    let axioms = verify_group_axioms(sdp);
    expect(f, axioms.pass(), || "group axiom check fails".into());

    let identity = sdp.law().identity();
    expect(
        f,
        identity.w_key == sdp.law().w_identity_key()
            && identity.sigma_key == sdp.law().base_identity_key(),
        || "identity is not the pair of component identities".into(),
    );

    let phi = build_phi_table(a, hat, ps, w_script, w_base)?;
    for (idx, e) in sdp.elements().iter().enumerate() {
        let inv_idx = sdp
            .inverse_index(idx)
            .ok_or_else(|| anyhow::anyhow!("element #{idx} has no inverse"))?;
        let inv = &sdp.elements()[inv_idx];
        let wi = w_script
            .position_of_key(&e.w_key)
            .ok_or_else(|| anyhow::anyhow!("unresolved sign component"))?;
        let si = w_base
            .position_of_key(&e.sigma_key)
            .ok_or_else(|| anyhow::anyhow!("unresolved base component"))?;
        let wi_inv = w_script.inverse_index(wi).expect("component inverse");
        let si_inv = w_base.inverse_index(si).expect("component inverse");
        let expected_w = w_script.element(phi[si_inv].apply(wi_inv)).key();
        let expected_s = w_base.element(si_inv).key();
        expect(
            f,
            inv.w_key == expected_w && inv.sigma_key == expected_s,
            || format!("inverse of element #{idx} does not match the closed form"),
        );
    }
    Ok(())
}

#[test]
fn criterion_9_verify_determinism() {
    run_criterion("criterion 9 (verify determinism)", || {
        let mut f = Vec::new();
        let exe = env!("CARGO_BIN_EXE_sandwich");
        let dir = tempfile::tempdir()?;
        let bundle = dir.path().join("c3.json");
        let built = Command::new(exe)
            .env_remove("SANDWICH_CAP")
            .args(["build", "--ambient", "C", "--rank", "3", "--hstar", "1,0,0"])
            .arg("--out")
            .arg(&bundle)
            .output()?;
        expect(&mut f, built.status.code() == Some(0), || {
            format!("build failed: {}", String::from_utf8_lossy(&built.stderr))
        });
        let verify = |cap: Option<&str>| -> anyhow::Result<Vec<u8>> {
            let mut cmd = Command::new(exe);
            cmd.env_remove("SANDWICH_CAP");
            if let Some(c) = cap {
                cmd.env("SANDWICH_CAP", c);
            }
            let out = cmd.args(["verify", "--bundle"]).arg(&bundle).output()?;
            if out.status.code() != Some(0) {
                anyhow::bail!("verify failed: {}", String::from_utf8_lossy(&out.stderr));
            }
            Ok(out.stdout)
        };
        let first = verify(None)?;
        let second = verify(None)?;
        expect(&mut f, first == second, || {
            "two identical runs differ byte for byte".into()
        });
        // Execution shape is single-threaded by construction; the
        // closure cap is the one knob that changes how the run is
        // scheduled, and a different (sufficient) cap must not move a
        // byte either.
        let third = verify(Some("123456"))?;
        expect(&mut f, first == third, || {
            "a different closure cap changed the report bytes".into()
        });
        expect(&mut f, !first.is_empty(), || "verify wrote no report".into());
        Ok(f)
    });
}
