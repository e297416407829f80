use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use closurelab::algebra::ops::monomials_of;
use closurelab::algebra::{module_member, FreeVec, Polynomial, RingDescriptor};
use closurelab::certificate::IntegralityCertificate;
use closurelab::ideal_closure::{closure_contains, newton_closure, semigroup_exponents, semigroup_ideal_closure};
use closurelab::module_closure::{compare, lic_member, rees_member, Membership, Provenance, SubmodulePresentation, Verdict};
use closurelab::parse::{parse_element, parse_ideal, parse_poly, parse_ring, parse_vectors};
use closurelab::props::{dim0_suite, newton_cross_oracle, run_property_suite};
use closurelab::schema::{verify_document, CertificateDoc, CommandEcho, Report, VerdictDoc, WitnessDoc, SCHEMA_VERSION};
use closurelab::search::{certify_ideal_member, SearchOptions};
use closurelab::test_ideals::{default_exponents, frobenius_and_conductor, lc_stage_probe, socle, tau_i_sample_dim1, tau_m_dim0, tau_upper_bound_dim2};
use closurelab::torsionless::{build_truncation, represent_torsionless, verify_quadratic_identity, verify_witness};
use closurelab::Error;

use crate::{Cli, Command, ModuleArgs, Suite};

/// Verdicts and payloads collected while a command runs.
#[derive(Default)]
struct Out {
    ring: Option<String>,
    verdicts: Vec<VerdictDoc>,
    certificates: Vec<CertificateDoc>,
    witness: Option<WitnessDoc>,
    seed: Option<u64>,
}

impl Out {
    fn attach(&mut self, c: &IntegralityCertificate) -> usize {
        self.certificates.push(CertificateDoc::from_certificate(c));
        self.certificates.len() - 1
    }

    fn push(&mut self, subject: String, property: &str, status: &str, provenance: &str) -> &mut VerdictDoc {
        self.verdicts.push(VerdictDoc {
            subject,
            property: property.to_string(),
            status: status.to_string(),
            provenance: provenance.to_string(),
            route: None,
            certificate: None,
            value: None,
        });
        self.verdicts.last_mut().expect("just pushed")
    }

    fn holds(&mut self, subject: String, property: &str, ok: bool, provenance: &str) -> &mut VerdictDoc {
        self.push(subject, property, if ok { "holds" } else { "fails" }, provenance)
    }

    fn verdict(&mut self, subject: String, property: &str, v: &Verdict) {
        let cert = v.certificate.as_ref().map(|c| self.attach(c));
        let doc = self.push(subject, property, membership(v.membership), provenance(v.provenance));
        doc.route = Some(v.route.clone());
        doc.certificate = cert;
    }
}

fn membership(m: Membership) -> &'static str {
    match m {
        Membership::Member => "member",
        Membership::NonMember => "non-member",
        Membership::Inconclusive => "inconclusive",
    }
}

fn provenance(p: Provenance) -> &'static str {
    match p {
        Provenance::ExactOracle => "exact-oracle",
        Provenance::Certificate => "certificate",
        Provenance::ValuationCheck => "valuation-check",
        Provenance::Inconclusive => "inconclusive",
    }
}

fn ring_of(cli: &Cli) -> Result<RingDescriptor> {
    let text = cli.ring.as_deref().ok_or_else(|| anyhow!("--ring is required for this command"))?;
    Ok(parse_ring(text)?)
}

fn render_all(ps: &[Polynomial], ring: &RingDescriptor) -> Vec<String> {
    let names = ring.var_names();
    ps.iter().map(|p| p.render(&names)).collect()
}

fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<T>().with_context(|| format!("bad list entry `{s}`")))
        .collect()
}

pub fn run(cli: &Cli, args: Vec<String>, start: Instant) -> Result<Report> {
    let opts = SearchOptions::with_max_degree(cli.max_degree);
    let mut out = Out::default();
    let name = match &cli.command {
        Command::IdealClosure { ideal } => {
            ideal_closure(cli, ideal, &mut out)?;
            "ideal-closure"
        }
        Command::Member { element, ideal } => {
            member(cli, element, ideal, opts, &mut out)?;
            "member"
        }
        Command::Lic(a) => {
            module_command(cli, a, Which::Lic, opts, &mut out)?;
            "lic"
        }
        Command::Rees(a) => {
            module_command(cli, a, Which::Rees, opts, &mut out)?;
            "rees"
        }
        Command::Compare(a) => {
            module_command(cli, a, Which::Both, opts, &mut out)?;
            "compare"
        }
        Command::Socle => {
            socle_command(cli, &mut out)?;
            "socle"
        }
        Command::Conductor => {
            conductor_command(cli, &mut out)?;
            "conductor"
        }
        Command::Tau { dim, exponents, stages } => {
            tau_command(cli, *dim, exponents.as_deref(), *stages, &mut out)?;
            "tau"
        }
        Command::LcProbe { params, t } => {
            lc_command(cli, params.as_deref(), *t, &mut out)?;
            "lc-probe"
        }
        Command::Props { seed, trials, suite } => {
            props_command(*seed, *trials, *suite, &mut out);
            "props"
        }
        Command::Torsionless { ideal, truncation } => {
            match (ideal, truncation) {
                (Some(i), _) => torsionless_command(cli, i, &mut out)?,
                (None, Some(n)) => truncation_command(*n, &mut out)?,
                (None, None) => bail!("give --ideal or --truncation"),
            }
            "torsionless"
        }
        Command::Verify { file } => {
            let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let subject = file.display().to_string();
            match verify_document(&text) {
                Ok(s) => {
                    out.holds(subject, "verify", true, "certificate").value =
                        Some(json!({"certificates": s.certificates, "witnesses": s.witnesses}));
                }
                Err(e @ (Error::Verification(_) | Error::Document(_))) => {
                    out.holds(subject, "verify", false, "certificate").value = Some(json!({"error": e.to_string()}));
                }
                Err(e) => return Err(e.into()),
            }
            "verify"
        }
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        command: CommandEcho {
            name: name.to_string(),
            args,
        },
        ring: out.ring,
        verdicts: out.verdicts,
        certificates: out.certificates,
        witness: out.witness,
        seed: out.seed,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn ideal_closure(cli: &Cli, ideal: &str, out: &mut Out) -> Result<()> {
    let ring = ring_of(cli)?;
    out.ring = Some(ring.to_string());
    let gens = parse_ideal(ideal, &ring)?;
    let value = match ring.semigroup_data() {
        Some(s) => {
            let set = semigroup_ideal_closure(&semigroup_exponents(&gens)?, s)?;
            json!({"generators": set.minimal_generators(s).iter().map(|e| format!("t^{e}")).collect::<Vec<_>>()})
        }
        None => json!({"generators": render_all(&newton_closure(&gens, &ring)?, &ring)}),
    };
    let doc = out.push(ideal.to_string(), "ideal-closure", "computed", "exact-oracle");
    doc.route = Some(oracle_route(&ring).to_string());
    doc.value = Some(value);
    Ok(())
}

fn oracle_route(ring: &RingDescriptor) -> &'static str {
    match ring {
        RingDescriptor::Poly { .. } => "newton",
        _ if ring.is_semigroup() => "semigroup-order",
        _ => "minimal-primes",
    }
}

fn member(cli: &Cli, element: &str, ideal: &str, opts: SearchOptions, out: &mut Out) -> Result<()> {
    let ring = ring_of(cli)?;
    out.ring = Some(ring.to_string());
    let z = parse_poly(element, &ring)?;
    let gens = parse_ideal(ideal, &ring)?;
    let subject = format!("{} over {ideal}", element.trim());
    let exact = match monomials_of(&gens) {
        Ok(_) => Some(closure_contains(&z, &gens, &ring)?),
        Err(Error::NotMonomial(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let cert = if exact == Some(false) {
        None
    } else {
        certify_ideal_member(&z, &gens, &ring, opts)?
    };
    let index = cert.as_ref().map(|c| out.attach(c));
    let (status, prov, route) = match (exact, &cert) {
        (Some(false), _) => ("non-member", "exact-oracle", oracle_route(&ring)),
        (_, Some(_)) => ("member", "certificate", "search"),
        (Some(true), None) => ("member", "exact-oracle", oracle_route(&ring)),
        (None, None) => ("inconclusive", "inconclusive", "search-exhausted"),
    };
    let doc = out.push(subject, "ideal-closure", status, prov);
    doc.route = Some(route.to_string());
    doc.certificate = index;
    if let Some(c) = &cert {
        doc.value = Some(json!({"degree": c.degree}));
    }
    Ok(())
}

enum Which {
    Lic,
    Rees,
    Both,
}

fn presentation(ring: &RingDescriptor, a: &ModuleArgs) -> Result<(SubmodulePresentation, FreeVec)> {
    if let (Some(m), Some(l)) = (&a.ambient, &a.sub_ideal) {
        let m = parse_ideal(m, ring)?;
        let l = parse_ideal(l, ring)?;
        let pres = SubmodulePresentation::ideal_pair(ring.clone(), &l, &m)?;
        let z = if a.element.trim_start().starts_with('[') {
            parse_element(&a.element, pres.rank, ring)?
        } else {
            // lift a monomial of M the same way the generators of L are lifted
            let z = parse_poly(&a.element, ring)?;
            SubmodulePresentation::ideal_pair(ring.clone(), &[z], &m)?
                .sub_lifts
                .pop()
                .ok_or_else(|| anyhow!("the element is zero in the ring"))?
        };
        return Ok((pres, z));
    }
    let relations = parse_vectors(&a.relations, a.rank, ring)?;
    let sub = parse_vectors(&a.sub, a.rank, ring)?;
    let pres = SubmodulePresentation::new(ring.clone(), a.rank, relations, sub)?;
    Ok((pres, parse_element(&a.element, a.rank, ring)?))
}

fn module_command(cli: &Cli, a: &ModuleArgs, which: Which, opts: SearchOptions, out: &mut Out) -> Result<()> {
    let ring = ring_of(cli)?;
    out.ring = Some(ring.to_string());
    let (pres, z) = presentation(&ring, a)?;
    let subject = a.element.trim().to_string();
    match which {
        Which::Lic => {
            let rep = lic_member(&z, &pres, opts)?;
            out.verdict(subject, "lic", &rep.lic);
        }
        Which::Rees => {
            let doc = match rees_member(&z, &pres) {
                Ok(b) => out.push(subject, "rees", if b { "member" } else { "non-member" }, "valuation-check"),
                Err(Error::Undecidable(why)) => {
                    let d = out.push(subject, "rees", "inconclusive", "inconclusive");
                    d.value = Some(Value::String(why));
                    d
                }
                Err(e) => return Err(e.into()),
            };
            doc.route = Some("valuations".into());
        }
        Which::Both => {
            let rep = compare(&z, &pres, opts)?;
            out.verdict(subject.clone(), "lic", &rep.lic);
            match &rep.rees {
                Some(v) => out.verdict(subject, "rees", v),
                None => {
                    out.push(subject, "rees", "inconclusive", "inconclusive").route = Some("unsupported".into());
                }
            }
        }
    }
    Ok(())
}

fn socle_command(cli: &Cli, out: &mut Out) -> Result<()> {
    let ring = ring_of(cli)?;
    out.ring = Some(ring.to_string());
    let s = socle(&ring)?;
    out.push("R".into(), "socle", "computed", "exact-oracle").value =
        Some(json!({"dimension": s.dimension, "generators": render_all(&s.generators, &ring)}));
    Ok(())
}

fn conductor_command(cli: &Cli, out: &mut Out) -> Result<()> {
    let ring = ring_of(cli)?;
    out.ring = Some(ring.to_string());
    let s = ring.semigroup_data().ok_or_else(|| anyhow!("{ring}: expected a numerical semigroup ring"))?;
    let c = frobenius_and_conductor(s.generators())?;
    out.push("R".into(), "conductor", "computed", "exact-oracle").value = Some(json!({
        "minimal_generators": c.generators,
        "gaps": c.gaps,
        "frobenius": c.frobenius,
        "threshold": c.threshold,
    }));
    Ok(())
}

fn tau_command(cli: &Cli, dim: u8, exponents: Option<&str>, stages: u32, out: &mut Out) -> Result<()> {
    let ring = ring_of(cli)?;
    out.ring = Some(ring.to_string());
    match dim {
        0 => {
            let t = tau_m_dim0(&ring)?;
            out.holds("R".into(), "tau-m-equals-socle", t.equals_socle, "exact-oracle").value =
                Some(json!({"dimension": t.dimension, "generators": render_all(&t.generators, &ring)}));
        }
        1 => {
            let s = ring.semigroup_data().ok_or_else(|| anyhow!("{ring}: expected a numerical semigroup ring"))?;
            let exps = match exponents {
                Some(e) => parse_list::<u64>(e)?,
                None => default_exponents(s),
            };
            let t = tau_i_sample_dim1(&ring, &exps)?;
            out.holds("R".into(), "tau-i-sample-equals-conductor", t.collapsed, "exact-oracle").value = Some(json!({
                "threshold": t.conductor.threshold,
                "frobenius": t.conductor.frobenius,
                "gaps": t.conductor.gaps,
                "sampled": exps,
                "collapse_list": t.collapse_list,
                "intersection": t.intersection.render(s),
                "warnings": t.warnings,
            }));
        }
        _ => {
            let chain = tau_upper_bound_dim2(&ring, stages)?;
            for st in &chain.stages {
                let index = out.attach(&st.certificate);
                let doc = out.holds(format!("n={}", st.n), "colon-within-bound", st.within_bound, "certificate");
                doc.certificate = Some(index);
                doc.value = Some(json!({
                    "colon": render_all(&st.colon, &ring),
                    "running_intersection": render_all(&st.running_intersection, &ring),
                }));
            }
        }
    }
    Ok(())
}

fn lc_command(cli: &Cli, params: Option<&str>, t: u32, out: &mut Out) -> Result<()> {
    let ring = ring_of(cli)?;
    out.ring = Some(ring.to_string());
    let params = match params {
        Some(p) => parse_list::<usize>(p)?,
        None => (0..ring.nvars()).collect(),
    };
    let st = lc_stage_probe(&ring, &params, t)?;
    out.holds(format!("t={t}"), "lc-transition", st.transition_ok, "exact-oracle").value = Some(json!({
        "ideal": render_all(&st.ideal, &ring),
        "closure": render_all(&st.closure, &ring),
        "annihilator": render_all(&st.annihilator, &ring),
    }));
    Ok(())
}

fn props_command(seed: u64, trials: usize, suite: Suite, out: &mut Out) {
    out.seed = Some(seed);
    if matches!(suite, Suite::Properties | Suite::All) {
        let rep = run_property_suite(seed, trials);
        for t in &rep.tallies {
            out.holds(format!("item {} ({})", t.item, t.name), "property", t.violations == 0, "exact-oracle").value =
                Some(json!({"checked": t.checked, "violations": t.violations}));
        }
        if !rep.violations.is_empty() {
            out.holds("violations".into(), "property", false, "exact-oracle").value = Some(json!(rep.violations));
        }
    }
    if matches!(suite, Suite::Dim0 | Suite::All) {
        let rep = dim0_suite(seed, trials);
        let ok = rep.formula_mismatches == 0 && rep.uncertified == 0 && rep.tau_mismatches == 0 && rep.max_certificate_degree <= 4;
        out.holds(format!("{} instances", rep.instances), "dim0-suite", ok, "exact-oracle").value = Some(json!({
            "formula_mismatches": rep.formula_mismatches,
            "uncertified": rep.uncertified,
            "max_certificate_degree": rep.max_certificate_degree,
            "tau_mismatches": rep.tau_mismatches,
            "failures": rep.failures,
        }));
    }
    if matches!(suite, Suite::Cross | Suite::All) {
        let rep = newton_cross_oracle(seed, trials);
        let ok = rep.failures.is_empty() && rep.false_certificates == 0 && rep.certified == rep.closure_generators;
        out.holds(format!("{} ideals", rep.ideals), "newton-cross-oracle", ok, "certificate").value = Some(json!({
            "closure_generators": rep.closure_generators,
            "certified": rep.certified,
            "max_degree_used": rep.max_degree_used,
            "outside_checked": rep.outside_checked,
            "false_certificates": rep.false_certificates,
            "failures": rep.failures,
        }));
    }
}

fn torsionless_command(cli: &Cli, ideal: &str, out: &mut Out) -> Result<()> {
    let ring = ring_of(cli)?;
    out.ring = Some(ring.to_string());
    let gens = parse_ideal(ideal, &ring)?;
    let w = represent_torsionless(&gens, &ring)?;
    let ok = verify_witness(&w).is_ok() && w.lengths.0 == w.lengths.1;
    out.holds(ideal.to_string(), "torsionless-representation", ok, "certificate").value = Some(json!({
        "free_rank": w.free_rank,
        "level": w.level,
        "index": w.index,
        "length_t_over_l": w.lengths.0,
        "length_r_over_i": w.lengths.1,
    }));
    out.witness = Some(WitnessDoc::from_witness(&w));
    Ok(())
}

fn truncation_command(level: usize, out: &mut Out) -> Result<()> {
    let trunc = build_truncation(level)?;
    out.ring = Some(trunc.ring.to_string());
    let relations = trunc.relations();
    for i in 1..=level / 2 {
        let ok = verify_quadratic_identity(i, &trunc)?;
        out.holds(format!("i={i}, N={level}"), "quadratic-identity", ok, "exact-oracle");
        let d_in = module_member(&trunc.d(i), &relations, &trunc.ring)?;
        out.holds(format!("i={i}, N={level}"), "d-in-relations", d_in, "exact-oracle");
    }
    Ok(())
}
