use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn hlya(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hlya"))
        .args(args)
        .env_remove("HLYA_THREADS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn cert(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!(
            "certificate is not JSON ({e}); stderr: {}",
            String::from_utf8_lossy(&o.stderr)
        )
    })
}

fn without_duration(o: &Output) -> String {
    let mut c = cert(o);
    c.as_object_mut().unwrap().remove("duration_ms");
    serde_json::to_string(&c).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn entry<'a>(c: &'a Value, name: &str) -> &'a Value {
    c["results"]["axioms"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["name"] == name)
        .unwrap()
}

#[test]
fn check_fixtures() {
    let o = hlya(&["check", "--fixture", "heisenberg"]);
    assert_eq!(code(&o), 0);
    let c = cert(&o);
    assert_eq!(c["verdict"], "pass");
    assert_eq!(c["results"]["stem"], true);
    assert_eq!(c["results"]["center"]["dim"], 1);

    let o = hlya(&["check", "fixture:empty"]);
    assert_eq!(code(&o), 0);
    assert_eq!(cert(&o)["results"]["dim"], 0);

    let o = hlya(&["check", "--fixture", "paper-example-A"]);
    assert_eq!(code(&o), 1);
    let c = cert(&o);
    let mult = entry(&c, "multiplicative_binary");
    assert_eq!(mult["pass"], false);
    assert!(mult["failures"].as_array().unwrap().iter().any(|f| f["tuple"] == serde_json::json!([0, 1])));
    assert_eq!(c["results"]["center"]["dim"], 0);
    assert_eq!(c["results"]["metadata"]["fixture"], "paper-example-A");
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&hlya(&["check", "/nonexistent/algebra.json"])), 2);
    assert_eq!(code(&hlya(&["check", "--fixture", "no-such-fixture"])), 2);
    let bad = write(dir.path(), "bad.json", "{\"header\": {\"field\": \"Q\", \"dim\": 2},\n \"body\": [}");
    let o = hlya(&["check", &bad]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 2"), "{err}");
    let diag = write(
        dir.path(),
        "diag.json",
        r#"{"header":{"field":"Q","dim":2},"body":{"binary":[{"i":1,"j":1,"value":[1,0]}],"twist":[[1,0],[0,1]]}}"#,
    );
    assert_eq!(code(&hlya(&["check", &diag])), 2);
    assert_eq!(code(&hlya(&["frobnicate"])), 2);
}

#[test]
fn emitted_documents_reload_with_same_verdict() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["heisenberg", "paper-example-B", "twisted-heisenberg", "empty"] {
        let path = dir.path().join(format!("{name}.json"));
        let p = path.to_str().unwrap();
        assert_eq!(code(&hlya(&["fixture", "emit", name, "--out", p])), 0);
        let from_file = hlya(&["check", p]);
        let from_fixture = hlya(&["check", "--fixture", name]);
        assert_eq!(code(&from_file), code(&from_fixture), "{name}");
        assert_eq!(cert(&from_file)["results"]["axioms"], cert(&from_fixture)["results"]["axioms"]);
        assert_eq!(cert(&from_file)["inputs"][0]["sha256"], cert(&from_fixture)["inputs"][0]["sha256"]);
    }
}

#[test]
fn quotient_and_direct_sum() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.json");
    let o = hlya(&["quotient", "fixture:heisenberg", "--ideal", "center", "--emit", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let c = cert(&o);
    assert_eq!(c["results"]["quotient_dim"], 2);
    assert!(c["results"]["presentation"]["transversal"].is_array());
    let reload = hlya(&["check", out.to_str().unwrap()]);
    assert_eq!(code(&reload), 0);
    assert_eq!(cert(&reload)["results"]["axioms"]["abelian"], true);

    let o = hlya(&["quotient", "fixture:heisenberg", "--ideal", "[[1,0,0]]"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a Hom-ideal"));
    assert!(!cert(&o)["results"]["ideal_report"]["failures"].as_array().unwrap().is_empty());
    assert_eq!(code(&hlya(&["quotient", "fixture:heisenberg", "--ideal", "[[1,0]]"])), 2);

    let o = hlya(&["direct-sum", "fixture:heisenberg", "fixture:empty"]);
    assert_eq!(code(&o), 0);
    let sum = &cert(&o)["results"]["sum"];
    let single = cert(&hlya(&["check", "--fixture", "heisenberg"]));
    assert_eq!(sum["body"], serde_json::to_value(fixture_body("heisenberg")).unwrap());
    assert_eq!(single["results"]["dim"], sum["header"]["dim"]);
}

fn fixture_body(name: &str) -> Value {
    let o = hlya(&["fixture", "emit", name]);
    serde_json::from_slice::<Value>(&o.stdout).unwrap()["body"].clone()
}

#[test]
fn factor_set_modes() {
    let dir = tempfile::tempdir().unwrap();
    let o = hlya(&["factor-set", "fixture:heisenberg", "--roundtrip"]);
    assert_eq!(code(&o), 0);
    let c = cert(&o);
    assert_eq!(c["results"]["isomorphism_verified"], true);
    assert_eq!(c["results"]["factor_set"]["q"], 2);
    assert_eq!(c["results"]["factor_set"]["z"], 1);

    // [e1, e2] = e1 has trivial center
    let centerless = write(
        dir.path(),
        "centerless.json",
        r#"{"header":{"field":"Q","dim":2},"body":{"binary":[{"i":0,"j":1,"value":[1,0]}],"twist":[[1,0],[0,1]]}}"#,
    );
    let fs_path = dir.path().join("fs.json");
    let o = hlya(&["factor-set", &centerless, "--extract", "--emit", fs_path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let fs_doc = &cert(&o)["results"]["factor_set"];
    assert_eq!(fs_doc["z"], 0);
    assert!(fs_doc["pi2"].as_array().unwrap().is_empty());

    let o = hlya(&["factor-set", &centerless, "--extend", fs_path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    // a centerless factor set does not fit the Heisenberg algebra
    assert_eq!(code(&hlya(&["factor-set", "fixture:heisenberg", "--extend", fs_path.to_str().unwrap()])), 2);

    let heis_fs = dir.path().join("heis-fs.json");
    assert_eq!(
        code(&hlya(&["factor-set", "fixture:heisenberg", "--extract", "--emit", heis_fs.to_str().unwrap()])),
        0
    );
    let omega = dir.path().join("omega.json");
    let o = hlya(&[
        "factor-set",
        "fixture:heisenberg",
        "--extend",
        heis_fs.to_str().unwrap(),
        "--emit",
        omega.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(cert(&o)["results"]["center_is_first_block"], true);
    assert_eq!(code(&hlya(&["check", omega.to_str().unwrap()])), 0);

    let o = hlya(&["factor-set", "fixture:twisted-heisenberg", "--roundtrip"]);
    assert_eq!(code(&o), 3);
    let c = cert(&o);
    assert_eq!(c["verdict"], "obstruction");
    assert!(c["results"]["sylvester"]["augmented_rank"].as_u64() > c["results"]["sylvester"]["coefficient_rank"].as_u64());

    assert_eq!(code(&hlya(&["factor-set", "fixture:paper-example-A", "--extract"])), 1);
    assert_eq!(code(&hlya(&["factor-set", "fixture:heisenberg"])), 2);
}

#[test]
fn isoclinism_modes() {
    let dir = tempfile::tempdir().unwrap();
    let o = hlya(&["isoclinic", "fixture:heisenberg", "fixture:heisenberg-plus-abelian-2", "--search", "--field", "Q"]);
    assert_eq!(code(&o), 0);
    let c = cert(&o);
    let witness = c["results"]["witness"].clone();
    assert!(witness["theta"].is_array());
    assert_eq!(c["results"]["report"]["pass"], true);

    let wpath = write(dir.path(), "w.json", &witness.to_string());
    let o = hlya(&["isoclinic", "fixture:heisenberg", "fixture:heisenberg-plus-abelian-2", "--witness", &wpath]);
    assert_eq!(code(&o), 0);

    let id = write(dir.path(), "id.json", r#"{"field":"Q","theta":[[1,0],[0,1]],"beta":[[1]]}"#);
    assert_eq!(code(&hlya(&["isoclinic", "fixture:heisenberg", "fixture:heisenberg", "--witness", &id])), 0);
    let bad = write(dir.path(), "bad.json", r#"{"field":"Q","theta":[[1,0],[0,1]],"beta":[[2]]}"#);
    let o = hlya(&["isoclinic", "fixture:heisenberg", "fixture:heisenberg", "--witness", &bad]);
    assert_eq!(code(&o), 1);
    assert_eq!(cert(&o)["results"]["report"]["pass"], false);

    let o = hlya(&[
        "isoclinic",
        "fixture:paper-example-A",
        "fixture:paper-example-B",
        "--search",
        "--budget",
        "500",
    ]);
    assert_eq!(code(&o), 4);
    assert_eq!(cert(&o)["verdict"], "inconclusive");

    assert_eq!(
        code(&hlya(&["isoclinic", "fixture:heisenberg", "fixture:heisenberg", "--search", "--field", "F2"])),
        2
    );
}

#[test]
fn decompose_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let o = hlya(&[
        "decompose",
        "fixture:heisenberg-plus-abelian-2",
        "--emit-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let c = cert(&o);
    assert_eq!(c["results"]["decomposition"]["stem_dim"], 3);
    assert_eq!(c["results"]["decomposition"]["abelian_dim"], 2);
    assert_eq!(c["emitted"].as_array().unwrap().len(), 3);
    let stem = dir.path().join("stem.json");
    let o = hlya(&["isoclinic", stem.to_str().unwrap(), "fixture:heisenberg", "--search"]);
    assert_eq!(code(&o), 0);

    let o = hlya(&["decompose", "fixture:heisenberg"]);
    assert_eq!(cert(&o)["results"]["decomposition"]["abelian_dim"], 0);
    let o = hlya(&["decompose", "fixture:abelian"]);
    assert_eq!(cert(&o)["results"]["decomposition"]["stem_dim"], 0);
    // the center lies inside the derived subalgebra, so the obstruction to a
    // section does not block this step
    let o = hlya(&["decompose", "fixture:twisted-heisenberg"]);
    assert_eq!(code(&o), 0);
    assert_eq!(cert(&o)["results"]["decomposition"]["abelian_dim"], 0);
    let o = hlya(&["decompose", "fixture:jordan-center"]);
    assert_eq!(code(&o), 3);
    assert_eq!(cert(&o)["results"]["step"], "center");
    assert_eq!(code(&hlya(&["decompose", "fixture:paper-example-A"])), 1);
}

fn dir_snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn corpus_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = hlya(&["corpus", "--field", "F3", "--dim", "3", "--count", "6", "--seed", "11", "--out", d.path().to_str().unwrap()]);
        assert_eq!(code(&o), 0);
        assert_eq!(cert(&o)["results"]["count"], 6);
    }
    let sa = dir_snapshot(a.path());
    assert_eq!(sa.len(), 6);
    assert_eq!(sa, dir_snapshot(b.path()));
    let first = a.path().join("algebra-0000.json");
    assert_eq!(code(&hlya(&["check", first.to_str().unwrap()])), 0);

    let one = tempfile::tempdir().unwrap();
    let o = hlya(&["corpus", "--field", "F2", "--dim", "1", "--count", "1", "--out", one.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert_eq!(cert(&o)["results"]["abelian"], 1);

    let sweep = tempfile::tempdir().unwrap();
    let o = hlya(&["corpus", "--field", "F2", "--dim", "2", "--exhaustive", "--out", sweep.path().to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let c = cert(&o);
    assert_eq!(c["results"]["candidates"], 384);
    assert_eq!(c["results"]["count"].as_u64().unwrap() as usize, dir_snapshot(sweep.path()).len());

    let tmp = tempfile::tempdir().unwrap();
    assert_eq!(code(&hlya(&["corpus", "--field", "F5", "--dim", "2", "--out", tmp.path().to_str().unwrap()])), 2);
    assert_eq!(code(&hlya(&["corpus", "--field", "F2", "--dim", "5", "--out", tmp.path().to_str().unwrap()])), 2);
}

#[test]
fn certificates_are_deterministic_across_runs_and_threads() {
    let cases: [&[&str]; 4] = [
        &["check", "--fixture", "paper-example-B"],
        &["isoclinic", "fixture:heisenberg", "fixture:heisenberg-plus-abelian-2", "--search"],
        &["decompose", "fixture:heisenberg-plus-abelian-2"],
        &["factor-set", "fixture:heisenberg-plus-abelian-2", "--roundtrip"],
    ];
    for args in cases {
        let base = without_duration(&hlya(args));
        assert_eq!(base, without_duration(&hlya(args)), "{args:?}");
        for threads in ["1", "3"] {
            let mut with = vec!["--threads", threads];
            with.extend_from_slice(args);
            assert_eq!(base, without_duration(&hlya(&with)), "{args:?} with {threads} threads");
        }
        let env = Command::new(env!("CARGO_BIN_EXE_hlya"))
            .args(args)
            .env("HLYA_THREADS", "2")
            .output()
            .unwrap();
        assert_eq!(base, without_duration(&env), "{args:?} with HLYA_THREADS");
    }
}

#[test]
fn certificate_file_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    let o = hlya(&["--certificate", path.to_str().unwrap(), "check", "--fixture", "abelian"]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let c: Value = serde_json::from_slice(&fs::read(&path).unwrap()).unwrap();
    assert_eq!(c["tool"], "hlya");
    assert_eq!(c["verdict"], "pass");
}
