use closurelab::schema::Report;

/// 1 if any verdict fails, else 2 if any is inconclusive, else 0.
pub fn exit_code(report: &Report) -> u8 {
    let has = |s: &str| report.verdicts.iter().any(|v| v.status == s);
    if has("fails") {
        1
    } else if has("inconclusive") {
        2
    } else {
        0
    }
}

/// One line per verdict, `property subject => status [provenance]`, then
/// the certificate equations.
pub fn text(report: &Report) -> String {
    let mut out = String::new();
    if let Some(ring) = &report.ring {
        out.push_str(&format!("ring: {ring}\n"));
    }
    if let Some(seed) = report.seed {
        out.push_str(&format!("seed: {seed}\n"));
    }
    for v in &report.verdicts {
        let mut tags = v.provenance.clone();
        if let Some(r) = &v.route {
            tags.push_str(&format!(", {r}"));
        }
        if let Some(c) = v.certificate {
            tags.push_str(&format!(", certificate {c}"));
        }
        out.push_str(&format!("{} {} => {} [{tags}]\n", v.property, v.subject, v.status));
        if let Some(value) = &v.value {
            out.push_str(&format!("    {value}\n"));
        }
    }
    for (i, c) in report.certificates.iter().enumerate() {
        let cert = c.to_certificate().expect("emitted certificates parse back");
        out.push_str(&format!("certificate {i} (n = {}): {}\n", cert.degree, cert.equation()));
    }
    if let Some(w) = &report.witness {
        out.push_str(&format!(
            "witness: rank {}, level {}, {} certificates, lengths {} and {}\n",
            w.free_rank,
            w.level,
            w.certificates.len(),
            w.lengths[0],
            w.lengths[1]
        ));
    }
    out.push_str(&format!("elapsed: {} ms\n", report.elapsed_ms));
    out
}
