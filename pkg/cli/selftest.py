"""
Self-test: golden groups read from config/golden_examples.yaml, then
seeded sweeps against the brute-force oracles.
"""

import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable

import yaml

from core.weights import KTypeWeight, Signature, format_rational, parse_rational
from datum.blocks import datum_from_lambda_a, enumerate_data, mu_from_datum
from exception.exceptions import SelftestFailure
from lambda_map.projection import compute_lambda_a, compute_lambda_u, project_dominant
from logger.custom_logger import logger
from oracle.brute_force import (
    OracleBudget,
    oracle_good_partitions,
    oracle_hull,
    oracle_project,
    random_vectors,
)
from screening.certificates import (
    Level,
    block_certificate,
    certificate_case_a,
    certificate_case_b,
    certificate_case_b_below,
    dirac_test,
)
from screening.predicates import good_range_cuts, hull_check
from screening.screen import screen
from theta.theta_datum import ThetaDatum, assemble_inf_char
from utils.config_loader import DEFAULT_CONFIG_PATH, load_config


def _fractions(values) -> tuple[Fraction, ...]:
    return tuple(parse_rational(x) for x in values)


def _weights(values) -> list[KTypeWeight]:
    return [KTypeWeight.from_string(w) for w in values]


def _theta(entry: dict) -> ThetaDatum:
    return ThetaDatum.from_lists(entry["p"], entry["q"], [tuple(b) for b in entry["blocks"]], entry.get("nu"))


def _expect(name: str, what: str, got, expected) -> None:
    if got != expected:
        raise SelftestFailure(f"{name}: {what} is {got}, expected {expected}")


def _check_lambda_a(name: str, case: dict) -> None:
    sig = Signature(case["p"], case["q"])
    mu = KTypeWeight.from_string(case["mu"])
    res = compute_lambda_a(mu, sig)
    _expect(name, "lambda_a", res.lambda_a, _fractions(case["lambda_a"]))
    datum = datum_from_lambda_a(res, mu, sig)
    expected = _theta({"p": case["p"], "q": case["q"], "blocks": case["blocks"]}).datum
    _expect(name, "datum", datum, expected)
    _expect(name, "mu_from_datum", mu_from_datum(datum), mu)


def _check_lambda_u(name: str, case: dict) -> None:
    mu = KTypeWeight.from_string(case["mu"])
    _expect(name, "lambda_u", compute_lambda_u(mu, Signature(case["p"], case["q"])), _fractions(case["lambda_u"]))


def _check_inf_char(name: str, case: dict) -> None:
    td = _theta(case["datum"])
    if "inf_char" in case:
        _expect(name, "inf_char", assemble_inf_char(td).coords, _fractions(case["inf_char"]))
    if "mu" in case:
        _expect(name, "lowest K-type", td.reference_mu, KTypeWeight.from_string(case["mu"]))


def _check_screen(name: str, case: dict) -> None:
    _check_inf_char(name, case)
    td = _theta(case["datum"])
    report = screen(td, run_dirac=False)
    _expect(name, "verdict", report.verdict.value, case["verdict"])
    _expect(name, "good_cuts", list(report.good_cuts), case["good_cuts"])
    if "max_gap" in case:
        _expect(name, "max_gap", report.max_gap, parse_rational(case["max_gap"]))
    for key in ("unitarily_small", "hull_pass"):
        if key in case:
            _expect(name, key, getattr(report, key), case[key])
    if "case_b" in case:
        witnesses = [w for cert in certificate_case_b(td) for w in cert.witness_ktypes]
        _expect(name, "case (b) witnesses", witnesses, _weights(case["case_b"]))
    if "case_b_below" in case:
        witnesses = [w for cert in certificate_case_b_below(td) for w in cert.witness_ktypes]
        _expect(name, "case (b) witnesses below the contents", witnesses, _weights(case["case_b_below"]))


def _check_case_a(name: str, case: dict) -> None:
    _check_inf_char(name, case)
    td = _theta(case["datum"])
    if "block" in case:
        # no gap between the contents: the pair of one block is checked on its own
        _expect(name, "case (a) certificates", certificate_case_a(td), [])
        cert = block_certificate(td, case["block"])
        certs = [cert] if cert is not None else []
    else:
        certs = certificate_case_a(td)
    if not certs:
        raise SelftestFailure(f"{name}: no case (a) certificate")
    _expect(name, "case (a) witnesses", list(certs[0].witness_ktypes), _weights(case["witnesses"]))


def _check_dirac(name: str, case: dict) -> None:
    sig = Signature(case["p"], case["q"])
    for sub in case["cases"]:
        violated, best = dirac_test(KTypeWeight.from_string(sub["mu"]), _fractions(sub["inf_char"]), sig, Level.P_FULL)
        _expect(name, f"dirac({sub['mu']})", (violated, best), (sub["violated"], parse_rational(sub["best_norm_sq"])))


CHECKERS: dict[str, Callable[[str, dict], None]] = {
    "lambda_a": _check_lambda_a,
    "lambda_u": _check_lambda_u,
    "inf_char": _check_inf_char,
    "screen": _check_screen,
    "case_a": _check_case_a,
    "dirac": _check_dirac,
}


def _sweep_projection(budget: OracleBudget) -> None:
    for length in range(1, 9):
        for v in random_vectors(budget, length, count=budget.max_samples // 8):
            if project_dominant(v).value != oracle_project(v):
                raise SelftestFailure(f"oracle-projection: mismatch at {[format_rational(x) for x in v]}")


def _sweep_hull(budget: OracleBudget) -> None:
    for n in range(1, budget.max_n + 1):
        samples = random_vectors(budget, 2 * n, count=budget.max_samples // budget.max_n)
        for v in samples:
            x, center = v[:n], (sum(v[n:], Fraction(0)) / n,) * n
            # shift so that sums agree in about half of the samples
            if v[0] > 0:
                center = tuple(c + (sum(x) - sum(center)) / n for c in center)
            if hull_check(x, center) != oracle_hull(x, center, budget):
                raise SelftestFailure(f"oracle-hull: mismatch at {[format_rational(c) for c in x]}")


def _sweep_round_trip(budget: OracleBudget) -> None:
    bound = Fraction(3, 2)
    for n in range(1, budget.max_n + 1):
        for p in range(0, n + 1):
            sig = Signature(p, n - p)
            for datum in enumerate_data(sig, bound):
                mu = mu_from_datum(datum)
                back = datum_from_lambda_a(compute_lambda_a(mu, sig), mu, sig)
                if back != datum:
                    raise SelftestFailure(f"round-trip: {datum} came back as {back}")
                td = ThetaDatum(datum, tuple((Fraction(0),) * b.k for b in datum.blocks))
                if len(datum.blocks) <= 6 and bool(good_range_cuts(td)) != (
                    max(len(parts) for parts in oracle_good_partitions(td)) > 1
                ):
                    raise SelftestFailure(f"oracle-good-range: mismatch at {datum}")


SWEEPS: dict[str, Callable[[OracleBudget], None]] = {
    "oracle-projection": _sweep_projection,
    "oracle-hull": _sweep_hull,
    "round-trip": _sweep_round_trip,
}


def golden_path() -> Path:
    """Golden file from the config, resolved against the project root when relative."""
    configured = load_config().get("cli", {}).get("golden_file", "config/golden_examples.yaml")
    path = Path(configured)
    return path if path.is_absolute() else DEFAULT_CONFIG_PATH.parent.parent / path


def load_golden(path: Path) -> dict:
    """
    Reads the golden groups mapping.

    Raises
    ------
    SelftestFailure
        If the file is missing, is not YAML or has no 'groups' mapping.
    """
    try:
        with open(path, "r") as file:
            data = yaml.safe_load(file)
        groups = data["groups"]
        if not isinstance(groups, dict):
            raise TypeError("'groups' is not a mapping")
    except (OSError, yaml.YAMLError, KeyError, TypeError) as e:
        raise SelftestFailure(f"golden file {path} cannot be read: {e}")
    return groups


def run_selftest(filter_name: str | None = None, golden: str | None = None) -> list[str]:
    """
    Runs golden groups and oracle sweeps, returning the names that passed.

    Raises
    ------
    SelftestFailure
        Naming the first failing case, or the golden file when it is unreadable.
    """
    path = Path(golden) if golden else golden_path()
    groups = load_golden(path)
    budget = OracleBudget.from_config()
    passed: list[str] = []
    for name, case in groups.items():
        if filter_name and name != filter_name:
            continue
        checker = CHECKERS.get(case.get("kind") if isinstance(case, dict) else None)
        if checker is None:
            raise SelftestFailure(f"{name}: unknown golden kind in {path}")
        try:
            checker(name, case)
        except SelftestFailure:
            raise
        except Exception as e:
            raise SelftestFailure(f"{name}: {e}", sys)
        passed.append(name)
        logger.info(f"selftest {name} passed")
    for name, sweep in SWEEPS.items():
        if filter_name and name != filter_name:
            continue
        sweep(budget)
        passed.append(name)
        logger.info(f"selftest {name} passed")
    if filter_name and not passed:
        raise SelftestFailure(f"no selftest group named {filter_name}")
    return passed
