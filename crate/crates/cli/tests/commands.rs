use classpec_cli::{exit, run};
use serde_json::Value;

fn cli(args: &str) -> classpec_cli::Outcome {
    run(std::iter::once("classpec").chain(args.split_whitespace()))
}

fn json(args: &str) -> Value {
    let out = cli(args);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.lines().count(), 1);
    serde_json::from_str(&out.stdout).unwrap()
}

#[test]
fn spectrum_json_schema() {
    let v = json("spectrum sp 2 3 --json");
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["group", "mu", "provenance", "version"]);
    assert_eq!(v["mu"], serde_json::json!(["8", "10", "12", "18"]));
    assert_eq!(v["group"]["engine"], "Sp");
    assert!(!v["provenance"].as_array().unwrap().is_empty());
}

#[test]
fn spectrum_full_lists_divisors() {
    let v = json("spectrum psp 2 3 --full --json");
    assert_eq!(v["mu"], serde_json::json!(["5", "9", "12"]));
    assert_eq!(v["omega"], serde_json::json!(["1", "2", "3", "4", "5", "6", "9", "12"]));
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["group", "mu", "omega", "provenance", "version"]);
}

#[test]
fn spectrum_text() {
    let out = cli("spectrum psp 2 3");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("mu      5 9 12"));
}

#[test]
fn field_size_as_power() {
    assert_eq!(json("spectrum sp 2 3^2 --json"), json("spectrum sp 2 9 --json"));
}

#[test]
fn delegation_is_reported() {
    let v = json("spectrum omega-odd 2 3 --json");
    assert_eq!(v["group"]["query"], "Omega_5(3)");
    assert_eq!(v["group"]["evaluated_as"], "PSp_4(3)");
    assert_eq!(v["mu"], serde_json::json!(["5", "9", "12"]));
}

#[test]
fn epsilon_spellings() {
    assert_eq!(
        json("spectrum omega-even 4 3 --eps - --json"),
        json("spectrum omega-even 4 3 --eps minus --json")
    );
    assert_eq!(cli("spectrum omega-even 4 3").code, exit::PARSE);
    assert_eq!(cli("spectrum sp 2 3 --eps +").code, exit::PARSE);
    assert_eq!(cli("spectrum omega-even 4 3 --eps x").code, exit::PARSE);
}

#[test]
fn exit_codes() {
    assert_eq!(cli("spectrum sp 1 3").code, exit::UNSUPPORTED);
    assert_eq!(cli("spectrum so-even 4 2 --eps +").code, exit::UNSUPPORTED);
    assert_eq!(cli("spectrum sp 2 6").code, exit::PARSE);
    assert_eq!(cli("spectrum nope 2 3").code, exit::PARSE);
    assert_eq!(cli("spectrum sp two 3").code, exit::PARSE);
    assert_eq!(cli("frobnicate").code, exit::PARSE);
    assert_eq!(cli("spectrum sp 4 3 --full --cap 3").code, exit::CAP_EXCEEDED);
    assert_eq!(
        cli("verify sp 3 3 --mode exhaustive --cap 1000").code,
        exit::CAP_EXCEEDED
    );
    assert_eq!(cli("witness sp 2 3 --order 7").code, exit::INFEASIBLE);
    assert_eq!(cli("witness sp 2 3 --order 0").code, exit::PARSE);
}

#[test]
fn help_goes_to_stdout() {
    let out = cli("--help");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("spectrum"));
}

#[test]
fn verify_exhaustive() {
    let out = cli("verify sp 2 3 --mode exhaustive --json");
    assert_eq!(out.code, 0);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "equal");
    assert_eq!(v["group_size"], "51840");
    assert_eq!(v["observed_max_orders"], serde_json::json!(["8", "10", "12", "18"]));
}

#[test]
fn verify_sample() {
    let out = cli("verify omega-odd 3 3 --mode sample --samples 2000 --seed 1");
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("verdict      contained"));
}

#[test]
fn witness_outputs() {
    let v = json("witness sp 2 3 --order 18 --json");
    assert_eq!(v["order"], "18");
    assert_eq!(v["matrix"].as_array().unwrap().len(), 4);
    assert_eq!(v["field"]["p"], 3);

    let v = json("witness sp 2 3 --order 1 --json");
    let m: Vec<Vec<u64>> = serde_json::from_value(v["matrix"].clone()).unwrap();
    assert_eq!(
        m,
        (0..4)
            .map(|i| (0..4).map(|j| (i == j) as u64).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    );

    let out = cli("witness sp 2 9 --order 80");
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("GF(9) = GF(3)[x]/("));
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_classpec");
    let out = std::process::Command::new(bin)
        .args(["spectrum", "sp", "1", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(exit::UNSUPPORTED));
    assert!(String::from_utf8_lossy(&out.stderr).contains("n >= 2"));
    let out = std::process::Command::new(bin)
        .args(["spectrum", "psp", "2", "3", "--json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        cli("spectrum psp 2 3 --json").stdout
    );
}
