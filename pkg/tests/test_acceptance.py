"""Acceptance criteria 1-12, one test each, checked against the suite reports.

Every suite runs once per session with seed 0 and 100 samples per norm entry.
Each test logs a single "criterion N: PASS|FAIL" line, collected in the
terminal summary.
"""

import re

import pytest

from grpscheme.suites import SuiteConfig, run_suite

CFG = SuiteConfig(seed=0, samples=100, ext_degree=3, base_change=True)
_CACHE: dict = {}


def suite(name):
    if name not in _CACHE:
        _CACHE[name] = run_suite(name, CFG)
    return _CACHE[name]


def select(name, pred):
    return [c for c in suite(name).checks if pred(c.name)]


def base_change(nm):
    return " over F_" in nm or "commutes with F_" in nm


def verdict(log, n, checks, extra=True, note=""):
    ok = bool(checks) and all(c.passed for c in checks) and extra
    bad = [c.name for c in checks if not c.passed]
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({len(checks)} checks{', ' + note if note else ''})"
    log.append(line)
    print(line)
    return ok, bad


def test_criterion_01_integrals(acceptance_log):
    checks = select("integrals", lambda nm: "integrals" in nm)
    want = {"C2", "C3", "S3@2", "alpha2", "alpha3", "mu2", "mu3", "heis2", "heis3", "armu3"}
    covered = {c.name.split(":")[0] for c in checks}
    ok, bad = verdict(acceptance_log, 1, checks, want <= covered)
    assert ok, (bad, want - covered)
    assert all(c.got == 1 for c in checks)


def test_criterion_02_mackey_example(acceptance_log):
    checks = suite("mackey-example").checks
    got = {c.name: c.got for c in checks}
    dims_ok = (got["heis2: dim V = dim ^H k[G]"] == 4 and got["heis3: dim V = dim ^H k[G]"] == 9
               and got["heis2: dim V^K"] == 2 and got["heis3: dim V^K"] == 3)
    ok, bad = verdict(acceptance_log, 2, checks, dims_ok)
    assert ok, bad


def test_criterion_03_projectivity_failure(acceptance_log):
    checks = select("higman", lambda nm: re.match(r"heis\d: V relative to", nm))
    ok, bad = verdict(acceptance_log, 3, checks, len(checks) == 4)
    assert ok, bad


def test_criterion_04_zigzag(acceptance_log):
    checks = select("adjunction", lambda nm: "zig-zag" in nm)
    ok, bad = verdict(acceptance_log, 4, checks, len(checks) >= 10)
    assert ok, bad


def test_criterion_05_wirthmuller(acceptance_log):
    twisted = select("wirthmuller", lambda nm: "ind(N) ~ coind(N (x) omega^-1)" in nm)
    obstruction = select("wirthmuller", lambda nm: nm.startswith("mu <= armu") and "untwisted" in nm)
    has_armu = any(c.name.startswith("alpha <= armu") for c in twisted)
    none_found = all(c.got == "none" for c in obstruction) and len(obstruction) == 2
    ok, bad = verdict(acceptance_log, 5, twisted + obstruction, has_armu and none_found,
                      "untwisted obstruction shown on the mu_p complement; alpha_p sub-claim is xfail")
    assert ok, bad


@pytest.mark.xfail(strict=True, reason="omega is trivial for alpha_p inside armu, so ind(k) ~ coind(k) holds there")
def test_criterion_05_literal_alpha_untwisted_fails():
    c = suite("wirthmuller")["alpha <= armu3: untwisted ind(k) ~ coind(k) (omega trivial: True)"]
    assert c.got == "none"


def test_criterion_06_transfer_nested(acceptance_log):
    checks = select("transfer", lambda nm: re.search(r"<= .* <= (heis\d|S3@\d):", nm) and not base_change(nm))
    kinds = {"Tr^G_K = Tr^G_H Tr^H_K", "(d s) = d", "(s d) = "}
    seen = {k for k in kinds for c in checks if k in c.name}
    covered = {c.name.split(":")[0].split(" <= ")[-1] for c in checks}
    ok, bad = verdict(acceptance_log, 6, checks, seen == kinds and {"heis2", "S3@2"} <= covered)
    assert ok, bad


def test_criterion_07_lambda_table(acceptance_log):
    checks = select("lambda", lambda nm: not base_change(nm))
    got = {c.name: c.got for c in checks}
    table_ok = (str(got["1 <= mu2: lambda"]).startswith("nonzero")
                and got["1 <= C2: lambda"] == "zero"
                and str(got["C2 <= S3@2: lambda"]).startswith("nonzero"))
    unip = [c for c in checks if c.name.startswith("unipotent")]
    equiv = [c for c in checks if "<=> Higman" in c.name]
    ok, bad = verdict(acceptance_log, 7, checks, table_ok and unip and equiv)
    assert ok, bad


def test_criterion_08_coinduced_surjective(acceptance_log):
    checks = select("transfer", lambda nm: "transfer surjective" in nm and not base_change(nm))
    ns = {re.search(r"M=coind\((\w+)\)", c.name).group(1) for c in checks}
    ok, bad = verdict(acceptance_log, 8, checks, ns == {"k", "kG"})
    assert ok, bad


def test_criterion_09_norm(acceptance_log):
    checks = select("norm", lambda nm: not base_change(nm))
    names = [c.name for c in checks]
    sampled = [nm for nm in names if re.search(r"on (\d+) (elements|pairs)", nm)]
    counts_ok = all(int(re.search(r"on (\d+) ", nm).group(1)) >= 100 for nm in sampled)
    need = ["Mumford = Nm^G", "multiplicative", "= s^|G:H| on S^G", "lands in S^G", "invariant"]
    present = all(any(k in nm for nm in names) for k in need)
    ok, bad = verdict(acceptance_log, 9, checks, counts_ok and present)
    assert ok, bad


def test_criterion_10_field_norm(acceptance_log):
    checks = suite("fieldnorm").checks
    got = {c.name: c for c in checks}
    specific = got["F4/F2 Frobenius: Nm(w) = 1"].passed
    ok, bad = verdict(acceptance_log, 10, checks, specific
                      and any("Nm = N^2" in nm for nm in got) and any("Nm = N^1" in nm for nm in got))
    assert ok, bad


def test_criterion_11_ext(acceptance_log):
    checks = select("ext", lambda nm: not base_change(nm))
    cp = [c for c in checks if re.match(r"C[23]: dim Ext\^n\(k,k\), n <= 3", c.name)]
    dims_ok = len(cp) == 2 and all(list(c.got) == [1, 1, 1, 1] for c in cp)
    kinds = all(any(k in c.name for c in checks) for k in ("Tr res = 0", "levelwise transfer commutes"))
    ok, bad = verdict(acceptance_log, 11, checks, dims_ok and kinds)
    assert ok, bad


def test_criterion_12_base_change(acceptance_log):
    checks = [c for nm in ("transfer", "lambda", "norm") for c in select(nm, base_change)]
    per = {nm: bool(select(nm, base_change)) for nm in ("transfer", "lambda", "norm")}
    ok, bad = verdict(acceptance_log, 12, checks, all(per.values()))
    assert ok, (bad, per)
