import json
import random

import pytest

from flowering.cli import main


def run(*argv):
    return main([str(a) for a in argv])


@pytest.fixture(scope="module")
def instance_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "instance.json"
    code = run("gen", "--r", 4, "--p", 2147483647, "--k", 12, "--out", path)
    assert code == 0
    return path


def test_gen_writes_instance(instance_file):
    data = json.loads(instance_file.read_text())
    assert data["format"] == "flowering-instance-v1"
    assert len(data["genset"]["vectors"]) == 15  # n = 2^4 - 1
    assert data["k"] == 12


def test_gen_deterministic(tmp_path, instance_file):
    other = tmp_path / "instance2.json"
    assert run("gen", "--r", 4, "--p", 2147483647, "--k", 12, "--out", other) == 0
    assert other.read_bytes() == instance_file.read_bytes()


def test_prove_verify_ni(tmp_path, instance_file):
    proof = tmp_path / "proof.bin"
    assert run("prove", "--instance", instance_file, "--m", 4, "--t", 2,
               "--seed", 5, "--out", proof) == 0
    assert run("verify", "--instance", instance_file, "--proof", proof) == 0

    # byte-identical on repeat invocations
    proof2 = tmp_path / "proof2.bin"
    assert run("prove", "--instance", instance_file, "--m", 4, "--t", 2,
               "--seed", 5, "--out", proof2) == 0
    assert proof.read_bytes() == proof2.read_bytes()


def test_prove_verify_ni_json(tmp_path, instance_file):
    proof = tmp_path / "proof.json"
    assert run("prove", "--instance", instance_file, "--m", 2, "--t", 1,
               "--seed", 6, "--json", "--out", proof) == 0
    assert json.loads(proof.read_text())["format"] == "flowering-ni-proof-v1"
    assert run("verify", "--instance", instance_file, "--proof", proof) == 0


def test_prove_verify_interactive(tmp_path, instance_file):
    proof = tmp_path / "transcript.json"
    assert run("prove", "--instance", instance_file, "--m", 3, "--t", 2,
               "--seed", 7, "--mode", "interactive", "--out", proof) == 0
    assert run("verify", "--instance", instance_file, "--proof", proof) == 0

    data = json.loads(proof.read_text())
    data["transcript"]["queries"][0]["openings"][0][2] += 1
    tampered = proof.parent / "tampered.json"
    tampered.write_text(json.dumps(data))
    assert run("verify", "--instance", instance_file, "--proof", tampered) == 1


def test_verify_truncated_is_malformed(tmp_path, instance_file):
    proof = tmp_path / "proof.bin"
    run("prove", "--instance", instance_file, "--m", 2, "--t", 1, "--seed", 8,
        "--out", proof)
    truncated = tmp_path / "truncated.bin"
    truncated.write_bytes(proof.read_bytes()[:40])
    assert run("verify", "--instance", instance_file, "--proof", truncated) == 2

    garbage = tmp_path / "garbage.bin"
    garbage.write_bytes(b"not a proof at all")
    assert run("verify", "--instance", instance_file, "--proof", garbage) == 2


def test_verify_corrupted_rejects(tmp_path, instance_file):
    proof = tmp_path / "proof.bin"
    run("prove", "--instance", instance_file, "--m", 2, "--t", 1, "--seed", 9,
        "--out", proof)
    blob = bytearray(proof.read_bytes())
    blob[60] ^= 0xFF  # inside the level-0 root
    corrupted = tmp_path / "corrupted.bin"
    corrupted.write_bytes(bytes(blob))
    assert run("verify", "--instance", instance_file, "--proof", corrupted) in (1, 2)


def test_soundness_mc_cli(tmp_path, instance_file):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "adversaries": ["far-word-honest-fold", "lazy-copy"],
        "deltas": ["1/2"],
        "ms": [5],
        "ts": [2],
        "trials": 200,
    }))
    out = tmp_path / "mc.json"
    csv = tmp_path / "mc.csv"
    assert run("soundness-mc", "--instance", instance_file, "--config", cfg,
               "--seed", 3, "--csv", csv, "--out", out) == 0
    report = json.loads(out.read_text())
    assert report["violations"] == 0
    assert len(report["points"]) == 2
    assert csv.read_text().count("\n") == 3

    # determinism
    out2 = tmp_path / "mc2.json"
    assert run("soundness-mc", "--instance", instance_file, "--config", cfg,
               "--seed", 3, "--out", out2) == 0
    assert out2.read_text() == out.read_text()


def test_report_complexity_cli(tmp_path, instance_file):
    out = tmp_path / "complexity.json"
    assert run("report-complexity", "--instance", instance_file, "--m", 4,
               "--t", 2, "--seed", 11, "--out", out) == 0
    report = json.loads(out.read_text())
    assert report["all_asserted_hold"]
    assert report["measured"]["proof_length"] == 190
    assert report["bounds"]["proof_length_max"] == 240


def test_prove_with_explicit_word(tmp_path, instance_file):
    import random

    from flowering.experiments import Instance, random_codeword_word

    instance = Instance.from_json(json.loads(instance_file.read_text()))
    word = random_codeword_word(instance, random.Random(5))
    word_file = tmp_path / "word.json"
    word_file.write_text(json.dumps(word.to_json()))
    proof = tmp_path / "proof.bin"
    assert run("prove", "--instance", instance_file, "--word", word_file,
               "--m", 2, "--t", 1, "--out", proof) == 0
    assert run("verify", "--instance", instance_file, "--proof", proof) == 0


def test_gen_from_parity_check_file(tmp_path):
    matrix = {
        "matrix": [
            [0, 0, 0, 1, 1, 1, 1],
            [0, 1, 1, 0, 0, 1, 1],
            [1, 0, 1, 0, 1, 0, 1],
        ],
        "d": 3,
    }
    genset_file = tmp_path / "hamming.json"
    genset_file.write_text(json.dumps(matrix))
    instance = tmp_path / "hamming_instance.json"
    assert run("gen", "--r", 3, "--p", 101, "--k", 6, "--genset", genset_file,
               "--out", instance) == 0
    data = json.loads(instance.read_text())
    assert len(data["genset"]["vectors"]) == 7


def test_worker_pool_matches_inline(instance_file):
    from fractions import Fraction

    from flowering.experiments import Instance, soundness_mc_point
    from flowering.iopp import ProtocolParams

    instance = Instance.from_json(json.loads(instance_file.read_text()))
    kwargs = dict(adversary="lazy-copy", delta=Fraction(1, 2),
                  params=ProtocolParams(3, 2), trials=60, seed=9)
    inline = soundness_mc_point(instance, workers=1, **kwargs)
    pooled = soundness_mc_point(instance, workers=2, **kwargs)
    assert inline.accepts == pooled.accepts
    assert inline.to_json() == pooled.to_json()


def test_prove_verify_across_grid(tmp_path):
    # every honest proof verifies, for the whole instance grid
    for r in range(2, 9):
        n = (1 << r) - 1
        instance = tmp_path / f"instance_r{r}.json"
        assert run("gen", "--r", r, "--p", 2147483647, "--k", -(-3 * n // 4),
                   "--out", instance) == 0
        proof = tmp_path / f"proof_r{r}.bin"
        assert run("prove", "--instance", instance, "--m", 2, "--t", 2,
                   "--seed", r, "--out", proof) == 0
        assert run("verify", "--instance", instance, "--proof", proof) == 0


def test_check_bounds_cli(tmp_path):
    instance = tmp_path / "t1.json"
    assert run("gen", "--r", 2, "--p", 5, "--k", 2, "--out", instance) == 0
    out = tmp_path / "bounds.json"
    assert run("check-bounds", "--instance", instance, "--out", out) == 0
    report = json.loads(out.read_text())
    assert report["violations"] == 0
    assert report["levels"][0]["dimension"] == 2
    assert report["distance"]["bruteforce_distance"] == "2/3"
    assert report["distance"]["witness_weight"] == 4
