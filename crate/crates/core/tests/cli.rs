use quantum_pieri::cli::run;

fn qpieri(args: &str) -> (i32, String, String) {
    let argv = std::iter::once("qpieri".to_string()).chain(shell_words(args));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

/// Splits on spaces, keeping double-quoted runs together.
fn shell_words(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    for ch in s.chars() {
        match ch {
            '"' => quoted = !quoted,
            ' ' if !quoted => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            _ => cur.push(ch),
        }
    }
    if !cur.is_empty() || s.ends_with("\"\"") {
        out.push(cur);
    }
    out
}

fn json(args: &str) -> serde_json::Value {
    let (code, out, err) = qpieri(&format!("--format json {args}"));
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn ig28_product_has_no_t_term() {
    let v = json(r#"multiply --space IG:2:8 --u "s1 s2" --v "s3 s4 s3 s1 s2""#);
    let terms = v["terms"].as_array().unwrap();
    assert!(!terms.is_empty());
    assert!(terms.iter().all(|t| t["d"] == 0));
}

#[test]
fn flag_product_with_identity() {
    let v = json(r#"multiply --space B:3 --u "s1" --v """#);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["word"], "s1");
    assert_eq!(terms[0]["coeff"], 1);
}

#[test]
fn grassmannian_product_follows_interlacing() {
    let oracle = json(r#"multiply --space Gr:2:5 --p 2 --shape "[1,0]""#);
    let rule = json(r#"multiply --space Gr:2:5 --p 2 --shape "[1,0]" --method pieri"#);
    assert_eq!(oracle["terms"], rule["terms"]);
    let labels: Vec<&str> = oracle["terms"].as_array().unwrap().iter().map(|t| t["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["[3,0]", "[2,1]"]);
}

#[test]
fn lifts_of_degree_one() {
    let ig = json("lift --space IG:3:10 --d 1");
    assert_eq!(ig["lambda_b"], serde_json::json!([0, 0, 1, 1, 1]));
    assert_eq!(ig["omega_word"], "s1 s2");
    let og = json("lift --space OG:3:7 --d 1");
    assert_eq!(og["lambda_b"], serde_json::json!([0, 1, 1]));
    let gr = json("lift --space A:2:5 --d 1");
    assert_eq!(gr["lambda_b"], serde_json::json!([0, 1, 0, 0]));
}

#[test]
fn convert_special_and_identity() {
    let v = json(r#"convert --space IG:2:8 --w "s1 s2""#);
    assert_eq!(v["label"], "(4,1 // )");
    let v = json(r#"convert --space OG:2:7 --shape "(3 // 2,1)""#);
    let back = json(&format!(r#"convert --space OG:2:7 --w "{}""#, v["word"].as_str().unwrap()));
    assert_eq!(back["label"], "(3 // 2,1)");
    let id = json(r#"convert --space IG:2:8 --w """#);
    assert_eq!(id["label"], "(2,1 // )");
}

#[test]
fn verify_suites_pass() {
    for args in [
        "verify --space IG:2:6 --suite pieri-C",
        "verify --space OG:2:7 --suite gamma-chevalley",
        "verify --space Gr:2:5 --suite pieri-A",
        "verify --space IG:2:6 --suite tfae",
        "verify --space OG:2:7 --suite shapes",
        "verify --space C:2 --suite reduction --d 4",
        "verify --space IG:2:6 --suite vanishing",
        "verify --space OG:2:7 --suite lift",
    ] {
        let (code, out, err) = qpieri(args);
        assert_eq!(code, 0, "{args}: {out}{err}");
        assert!(out.contains("0 mismatches"), "{out}");
    }
    let v = json("verify --space OG:2:7 --suite gamma-chevalley");
    assert_eq!(v["gamma2_reading"], "bottom-part");
}

#[test]
fn json_is_deterministic() {
    let args = "--format json --workers 1 verify --space IG:2:6 --suite pieri-C";
    assert_eq!(qpieri(args).1, qpieri(args).1);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        "multiply --space IG:2:7 --u s1",
        "multiply --space OGeven:4:8 --u s1",
        "multiply --space IG:2:8 --u \"s2 s1\"",
        "multiply --space C:2 --u s9",
        "verify --space C:2 --suite pieri-C",
        "verify --space IG:2:6 --suite nonsense",
        "frobnicate",
    ] {
        let (code, _, err) = qpieri(args);
        assert_eq!(code, 2, "{args}");
        assert!(!err.is_empty());
    }
}

#[test]
fn help_exits_0() {
    let (code, out, _) = qpieri("--help");
    assert_eq!(code, 0);
    assert!(out.contains("multiply"));
}
