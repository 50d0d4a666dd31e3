//! The five subcommands. Every command prints exactly one report to stdout,
//! rendered either as aligned text or as a JSON object with sorted keys, so
//! runs with equal flags and seeds are byte-identical.

use std::fmt::Write as _;

use rankpke::analysis::{
    self, CodeVerdict, Mod1Resistance, Mod2Resistance, COMPARISON_SIZES_MOD1,
    COMPARISON_SIZES_MOD2, REGISTRY,
};
use rankpke::keyio::{self, WireObject};
use rankpke::linalg::LinearCode;
use rankpke::{DetRng, KeyPair, PublicKey, Scheme, SchemeParams, SecretKey};
use serde_json::json;

use crate::{
    bytecodec, read_file, write_file, AnalyzeArgs, DecryptArgs, EncryptArgs, Failure, KeygenArgs,
    OutputFormat, ParamsArgs,
};

fn param_summary(p: &SchemeParams) -> String {
    format!(
        "q={} m={} n={} k={} l={} λ={} t={}",
        p.q(),
        p.m(),
        p.n(),
        p.k(),
        p.l(),
        p.lambda(),
        p.t()
    )
}

fn params_json(p: &SchemeParams) -> serde_json::Value {
    json!({
        "scheme": p.scheme().as_str(),
        "q": p.q(),
        "m": p.m(),
        "n": p.n(),
        "k": p.k(),
        "l": p.l(),
        "lambda": p.lambda(),
        "t": p.t(),
    })
}

fn emit(format: OutputFormat, human: String, json: serde_json::Value) {
    match format {
        OutputFormat::Human => print!("{human}"),
        OutputFormat::Json => println!("{json:#}"),
    }
}

pub fn keygen(args: KeygenArgs) -> Result<(), Failure> {
    let params = args.params.resolve()?;
    let seed = args.seed.resolve()?;
    let mut rng = DetRng::from_seed(seed);
    let kp = rankpke::schemes::keygen(&params, &mut rng)?;

    write_file(&args.pub_path, &keyio::serialize(&WireObject::Public(kp.public.clone())))?;
    write_file(&args.sec_path, &keyio::serialize(&WireObject::Secret(kp.secret.clone())))?;

    let formula = analysis::public_key_size_bytes(&params);
    let wire = keyio::public_key_wire_bytes(&params);
    let rate = analysis::information_rate(&params);

    let mut out = String::new();
    let _ = writeln!(out, "scheme            {}", params.scheme());
    let _ = writeln!(out, "parameters        {}", param_summary(&params));
    let _ = writeln!(out, "message symbols   {}", params.msg_len());
    let _ = writeln!(out, "information rate  {rate:.2}");
    let _ = writeln!(out, "seed              {}", hex::encode(seed));
    let _ = writeln!(
        out,
        "public key        {} — {formula} bytes by the size formula, {wire} on the wire",
        args.pub_path.display()
    );
    let _ = writeln!(out, "secret key        {}", args.sec_path.display());

    let mut j = params_json(&params);
    let obj = j.as_object_mut().unwrap();
    obj.insert("command".into(), json!("keygen"));
    obj.insert("message_symbols".into(), json!(params.msg_len()));
    obj.insert("information_rate".into(), json!(rate));
    obj.insert("seed".into(), json!(hex::encode(seed)));
    obj.insert("public_key_file".into(), json!(args.pub_path.display().to_string()));
    obj.insert("secret_key_file".into(), json!(args.sec_path.display().to_string()));
    obj.insert("public_key_formula_bytes".into(), json!(formula));
    obj.insert("public_key_wire_bytes".into(), json!(wire));

    emit(args.format, out, j);
    Ok(())
}

pub fn encrypt(args: EncryptArgs) -> Result<(), Failure> {
    let pk = keyio::deserialize(&read_file(&args.pub_path)?)?.into_public()?;
    let params = pk.params.clone();

    let input = read_file(&args.input)?;
    let (msg, payload) = if args.encode_bytes {
        let msg = bytecodec::encode(&params, &input)?;
        (msg, Some(input.len()))
    } else {
        let obj = keyio::deserialize(&input)?;
        if obj.params() != &params {
            return Err(Failure::Usage(
                "message was encoded for different parameters than the public key".into(),
            ));
        }
        (obj.into_message()?, None)
    };

    let seed = args.seed.resolve()?;
    let mut rng = DetRng::from_seed(seed);
    let ct = rankpke::schemes::encrypt(&pk, &msg, &mut rng)?;
    let symbols = ct.c.len();
    write_file(&args.output, &keyio::serialize(&WireObject::Cipher(ct)))?;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "ciphertext        {} ({symbols} symbols)",
        args.output.display()
    );
    let _ = writeln!(out, "seed              {}", hex::encode(seed));
    if let Some(bytes) = payload {
        let _ = writeln!(
            out,
            "payload           {bytes} bytes of {} capacity",
            bytecodec::capacity_bytes(&params)
        );
    }

    let mut j = json!({
        "command": "encrypt",
        "ciphertext_file": args.output.display().to_string(),
        "symbols": symbols,
        "seed": hex::encode(seed),
    });
    if let Some(bytes) = payload {
        let obj = j.as_object_mut().unwrap();
        obj.insert("payload_bytes".into(), json!(bytes));
        obj.insert("capacity_bytes".into(), json!(bytecodec::capacity_bytes(&params)));
    }

    emit(args.format, out, j);
    Ok(())
}

pub fn decrypt(args: DecryptArgs) -> Result<(), Failure> {
    let sk = keyio::deserialize(&read_file(&args.sec_path)?)?.into_secret()?;
    let ct = keyio::deserialize(&read_file(&args.input)?)?.into_ciphertext()?;

    // fails with DecodingFailure (exit 3) when the re-encryption check does
    // not come back clean
    let msg = rankpke::schemes::decrypt(&sk, &ct)?;
    let symbols = msg.len();

    let payload = if args.encode_bytes {
        let raw = bytecodec::decode(&sk.params, &msg)?;
        write_file(&args.output, &raw)?;
        Some(raw.len())
    } else {
        let obj = WireObject::Message(sk.params.clone(), msg);
        write_file(&args.output, &keyio::serialize(&obj))?;
        None
    };

    let mut out = String::new();
    let _ = writeln!(out, "consistency check passed");
    let _ = writeln!(
        out,
        "message           {} ({symbols} symbols)",
        args.output.display()
    );
    if let Some(bytes) = payload {
        let _ = writeln!(out, "payload           {bytes} bytes");
    }

    let mut j = json!({
        "command": "decrypt",
        "consistency": "passed",
        "message_file": args.output.display().to_string(),
        "symbols": symbols,
    });
    if let Some(bytes) = payload {
        j.as_object_mut().unwrap().insert("payload_bytes".into(), json!(bytes));
    }

    emit(args.format, out, j);
    Ok(())
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

enum TrialRow {
    Loidreau {
        verdict: CodeVerdict,
        precondition: bool,
        chain_dim: usize,
        equals_target: bool,
    },
    Mod1(Mod1Resistance, CodeVerdict),
    Mod2(Mod2Resistance, CodeVerdict),
}

fn run_trial(kp: &KeyPair) -> rankpke::Result<TrialRow> {
    let params = &kp.public.params;
    let c_pub = LinearCode::from_generators(&kp.public.g_pub);
    let verdict = analysis::distinguish_gabidulin(&c_pub);
    match params.scheme() {
        Scheme::Loidreau => {
            let w = analysis::whitebox_decompose(&kp.secret)?;
            let (n, k) = (params.n(), params.k());
            let r = n - k - 1;
            let chain = analysis::cc_chain_intersection(&c_pub, r);
            Ok(TrialRow::Loidreau {
                verdict,
                precondition: analysis::check_assumption1(&w, n, k),
                chain_dim: chain.dim(),
                equals_target: chain == w.chain_target(r),
            })
        }
        Scheme::Mod1 => Ok(TrialRow::Mod1(analysis::verify_mod1_resistance(kp)?, verdict)),
        Scheme::Mod2 => Ok(TrialRow::Mod2(analysis::verify_mod2_resistance(kp)?, verdict)),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn analyze(args: AnalyzeArgs) -> Result<(), Failure> {
    if args.costs {
        let params = match &args.sec_path {
            Some(path) => {
                keyio::deserialize(&read_file(path)?)?
                    .into_secret()?
                    .params
            }
            None => args.params.resolve()?,
        };
        return costs_report(&params, args.format);
    }

    let (params, pairs, seed) = match &args.sec_path {
        Some(path) => {
            let sk: SecretKey = keyio::deserialize(&read_file(path)?)?.into_secret()?;
            let kp = KeyPair {
                public: PublicKey {
                    params: sk.params.clone(),
                    g_pub: sk.g_pub.clone(),
                },
                secret: sk,
            };
            (kp.public.params.clone(), vec![kp], None)
        }
        None => {
            let params = args.params.resolve()?;
            if args.trials == 0 {
                return Err(Failure::Usage("--trials must be at least 1".into()));
            }
            let seed = args.seed.resolve()?;
            let mut master = DetRng::from_seed(seed);
            let mut pairs = Vec::with_capacity(args.trials);
            for _ in 0..args.trials {
                let mut rng = master.fork();
                pairs.push(rankpke::schemes::keygen(&params, &mut rng)?);
            }
            (params, pairs, Some(seed))
        }
    };

    let rows: Vec<TrialRow> = pairs
        .iter()
        .map(run_trial)
        .collect::<rankpke::Result<_>>()?;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "scheme {} — {}, {} key pair{}",
        params.scheme(),
        param_summary(&params),
        rows.len(),
        if rows.len() == 1 { "" } else { "s" }
    );
    if let Some(seed) = seed {
        let _ = writeln!(out, "seed {}", hex::encode(seed));
    }

    let mut jtrials = Vec::new();
    match params.scheme() {
        Scheme::Loidreau => {
            let _ = writeln!(
                out,
                "{:>5}  {:>13}  {:>12}  {:>9}  {:>13}",
                "trial", "distinguisher", "precondition", "chain-dim", "equals-target"
            );
            let (mut dim2, mut eq, mut pre) = (0, 0, 0);
            for (i, row) in rows.iter().enumerate() {
                let TrialRow::Loidreau {
                    verdict,
                    precondition,
                    chain_dim,
                    equals_target,
                } = row
                else {
                    unreachable!()
                };
                dim2 += usize::from(*chain_dim == 2);
                eq += usize::from(*equals_target);
                pre += usize::from(*precondition);
                let _ = writeln!(
                    out,
                    "{:>5}  {:>13}  {:>12}  {:>9}  {:>13}",
                    i + 1,
                    verdict.to_string(),
                    yes_no(*precondition),
                    chain_dim,
                    yes_no(*equals_target)
                );
                jtrials.push(json!({
                    "trial": i + 1,
                    "distinguisher": verdict.to_string(),
                    "precondition": precondition,
                    "chain_dim": chain_dim,
                    "equals_target": equals_target,
                }));
            }
            let n = rows.len();
            let _ = writeln!(
                out,
                "chain intersection collapsed to dimension 2 in {dim2}/{n} and matched the white-box target in {eq}/{n}"
            );
            let _ = writeln!(
                out,
                "chain-attack precondition (trivial intersection of the g/h evaluation codes) held in {pre}/{n}"
            );
            let summary = json!({
                "chain_dim_2": dim2,
                "equals_target": eq,
                "precondition_held": pre,
                "trials": n,
            });
            emit_analyze(args.format, out, &params, seed, jtrials, summary);
        }
        Scheme::Mod1 => {
            let _ = writeln!(
                out,
                "{:>5}  {:>13}  {:>12}  {:>9}",
                "trial", "distinguisher", "dim(D+D^[1])", "resistant"
            );
            let mut filled = 0;
            let mut shape_ok = true;
            for (i, row) in rows.iter().enumerate() {
                let TrialRow::Mod1(r, verdict) = row else { unreachable!() };
                filled += usize::from(r.dim_sum == r.n);
                shape_ok &= r.shape_ok;
                let _ = writeln!(
                    out,
                    "{:>5}  {:>13}  {:>12}  {:>9}",
                    i + 1,
                    verdict.to_string(),
                    r.dim_sum,
                    yes_no(r.resistant)
                );
                jtrials.push(json!({
                    "trial": i + 1,
                    "distinguisher": verdict.to_string(),
                    "dim_sum": r.dim_sum,
                    "expected_random": r.expected,
                    "shape_ok": r.shape_ok,
                    "resistant": r.resistant,
                }));
            }
            let n = rows.len();
            let _ = writeln!(
                out,
                "dual Frobenius sum filled the whole space in {filled}/{n} trials (shape floor 2(n−k+l) ≥ n: {})",
                yes_no(shape_ok)
            );
            let bound = (params.k() + params.l() < params.n())
                .then(|| {
                    analysis::trivial_intersection_prob_bound(
                        params.n(),
                        params.k(),
                        params.l(),
                        params.m(),
                        params.q(),
                    )
                })
                .transpose()?;
            if let Some(b) = bound {
                let _ = writeln!(
                    out,
                    "subcode sampling: trivial-intersection probability ≥ {b:.6}"
                );
            }
            let summary = json!({
                "filled_space": filled,
                "shape_ok": shape_ok,
                "trials": n,
                "trivial_intersection_bound": bound,
            });
            emit_analyze(args.format, out, &params, seed, jtrials, summary);
        }
        Scheme::Mod2 => {
            let _ = writeln!(
                out,
                "{:>5}  {:>13}  {:>9}  {:>15}  {:>9}  {:>11}  {:>5}",
                "trial", "distinguisher", "chain-dim", "contains-target", "mask-rank", "subcode-dim", "floor"
            );
            let (mut escaped, mut floored) = (0, 0);
            for (i, row) in rows.iter().enumerate() {
                let TrialRow::Mod2(r, verdict) = row else { unreachable!() };
                escaped += usize::from(!r.contains_target);
                floored += usize::from(r.subcode_dim >= r.subcode_floor);
                let _ = writeln!(
                    out,
                    "{:>5}  {:>13}  {:>9}  {:>15}  {:>9}  {:>11}  {:>5}",
                    i + 1,
                    verdict.to_string(),
                    r.chain_dim,
                    yes_no(r.contains_target),
                    r.mask_rank,
                    r.subcode_dim,
                    r.subcode_floor
                );
                jtrials.push(json!({
                    "trial": i + 1,
                    "distinguisher": verdict.to_string(),
                    "chain_dim": r.chain_dim,
                    "contains_target": r.contains_target,
                    "mask_rank": r.mask_rank,
                    "subcode_dim": r.subcode_dim,
                    "subcode_floor": r.subcode_floor,
                    "resistant": r.resistant,
                }));
            }
            let n = rows.len();
            let _ = writeln!(
                out,
                "white-box target escaped the chain intersection in {escaped}/{n} trials"
            );
            let _ = writeln!(
                out,
                "dual subcode dimension met the (n−k)−rank(mask) floor in {floored}/{n} trials"
            );
            let summary = json!({
                "containment_failed": escaped,
                "subcode_floor_met": floored,
                "trials": n,
            });
            emit_analyze(args.format, out, &params, seed, jtrials, summary);
        }
    }
    Ok(())
}

fn emit_analyze(
    format: OutputFormat,
    human: String,
    params: &SchemeParams,
    seed: Option<[u8; 32]>,
    trials: Vec<serde_json::Value>,
    summary: serde_json::Value,
) {
    let j = json!({
        "command": "analyze",
        "mode": "trials",
        "params": params_json(params),
        "seed": seed.map(hex::encode),
        "trials": trials,
        "summary": summary,
    });
    emit(format, human, j);
}

fn costs_report(params: &SchemeParams, format: OutputFormat) -> Result<(), Failure> {
    let report = analysis::attack_cost_report(params);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "attack-cost estimates — {} {}",
        params.scheme(),
        param_summary(params)
    );
    let _ = writeln!(out, "log₂ costs, O-constants taken as 1:");
    let _ = writeln!(out, "  support enumeration   {:>8.2}", report.log2_comb_support);
    let _ = writeln!(out, "  extended support      {:>8.2}", report.log2_comb_extended);
    let _ = writeln!(out, "  combinatorial (min)   {:>8.2}", report.log2_combinatorial);
    match report.log2_algebraic {
        Some(a) => {
            let _ = writeln!(out, "  algebraic             {:>8.2}", a);
        }
        None => {
            let _ = writeln!(out, "  algebraic             not applicable (guess space exceeds k)");
        }
    }
    let _ = writeln!(out, "  overall minimum       {:>8.2}", report.log2_min);

    let j = json!({
        "command": "analyze",
        "mode": "costs",
        "params": params_json(params),
        "log2_support": report.log2_comb_support,
        "log2_extended": report.log2_comb_extended,
        "log2_combinatorial": report.log2_combinatorial,
        "log2_algebraic": report.log2_algebraic,
        "log2_min": report.log2_min,
    });
    emit(format, out, j);
    Ok(())
}

// ---------------------------------------------------------------------------
// params
// ---------------------------------------------------------------------------

pub fn params(args: ParamsArgs) -> Result<(), Failure> {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<13} {:<8} {:>2} {:>3} {:>3} {:>3} {:>2} {:>2} {:>2} {:>4} {:>8} {:>6} {:>5} {:>9} {:>5}",
        "name", "scheme", "q", "m", "n", "k", "l", "λ", "t", "sec", "pk-bytes", "wire", "rate", "min-cost", "ok"
    );

    let mut jrows = Vec::new();
    let mut mismatches = 0;
    for e in &REGISTRY {
        let p = e.params()?;
        let computed = analysis::public_key_size_bytes(&p);
        let wire = keyio::public_key_wire_bytes(&p);
        let rate = analysis::information_rate(&p);
        let cost = analysis::attack_cost_report(&p);
        let bytes_match = computed == e.public_key_bytes;
        let rate_match = (rate - e.information_rate).abs() < 0.005;
        let t_match = p.t() == e.t;
        let ok = bytes_match && rate_match && t_match;
        mismatches += usize::from(!ok);
        let _ = writeln!(
            out,
            "{:<13} {:<8} {:>2} {:>3} {:>3} {:>3} {:>2} {:>2} {:>2} {:>4} {:>8} {:>6} {:>5.2} {:>9.1} {:>5}",
            e.name,
            e.scheme.as_str(),
            e.q,
            e.m,
            e.n,
            e.k,
            e.l,
            e.lambda,
            p.t(),
            e.security_bits,
            computed,
            wire,
            rate,
            cost.log2_min,
            if ok { "ok" } else { "MISMATCH" }
        );
        jrows.push(json!({
            "name": e.name,
            "scheme": e.scheme.as_str(),
            "q": e.q,
            "m": e.m,
            "n": e.n,
            "k": e.k,
            "l": e.l,
            "lambda": e.lambda,
            "t": p.t(),
            "security_bits": e.security_bits,
            "stored_bytes": e.public_key_bytes,
            "computed_bytes": computed,
            "bytes_match": bytes_match,
            "wire_bytes": wire,
            "stored_rate": e.information_rate,
            "computed_rate": rate,
            "rate_match": rate_match,
            "log2_min_cost": cost.log2_min,
        }));
    }
    if mismatches == 0 {
        let _ = writeln!(out, "all {} rows reproduce their stored sizes and rates", REGISTRY.len());
    } else {
        let _ = writeln!(out, "{mismatches} row(s) FAILED to reproduce their stored values");
    }

    let _ = writeln!(out);
    let _ = writeln!(out, "published key-size comparison (bytes)");
    let _ = writeln!(
        out,
        "{:>5} {:>14} {:>20}",
        "level", "subcode (mod1)", "low-rank mask (mod2)"
    );
    for (i, level) in [128u32, 192, 256].iter().enumerate() {
        let flag = if i == 0 { "*" } else { " " };
        let _ = writeln!(
            out,
            "{level:>5} {:>13}{flag} {:>20}",
            COMPARISON_SIZES_MOD1[i], COMPARISON_SIZES_MOD2[i]
        );
    }
    let mod1_128 = REGISTRY
        .iter()
        .find(|e| e.name == "mod1-128")
        .expect("registry carries a 128-bit subcode row");
    let _ = writeln!(
        out,
        "* the 128-bit subcode row computes to {} from its parameters; the two\n  published tables disagree, so both values are kept and labeled",
        mod1_128.public_key_bytes
    );

    let j = json!({
        "command": "params",
        "registry": jrows,
        "mismatches": mismatches,
        "comparison": {
            "levels": [128, 192, 256],
            "mod1": COMPARISON_SIZES_MOD1,
            "mod2": COMPARISON_SIZES_MOD2,
            "note": format!(
                "mod1 at 128 bits computes to {} from its parameters while the comparison table lists {}; both are kept",
                mod1_128.public_key_bytes, COMPARISON_SIZES_MOD1[0]
            ),
        },
    });
    emit(args.format, out, j);
    Ok(())
}
