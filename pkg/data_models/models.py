import json
import sys
from typing import Literal, Optional

from pydantic import BaseModel, Field, ValidationError, model_validator

from core.weights import KTypeWeight, Signature, format_rational, parse_rational
from datum.blocks import Block, BlockShape, LambdaDatum, mu_from_datum
from exception.exceptions import ParseError
from screening.certificates import Certificate, DiracViolation
from screening.screen import ScreeningReport
from theta.theta_datum import ThetaDatum, theta_datum_from_mu

Rational = str | int
ShapeName = Literal["rect", "par_down", "par_up", "trap_top", "trap_bottom"]


class WeightModel(BaseModel):
    """
    K-type highest weight as {"left": [...], "right": [...]}.
    """
    left: list[int] = Field(..., description="U(p) coordinates, weakly decreasing.")
    right: list[int] = Field(..., description="U(q) coordinates, weakly decreasing.")


class BlockModel(BaseModel):
    shape: ShapeName
    r: int
    s: int
    gamma: Rational = Field(..., description="Content as 'a/b' or 'a'.")


class LambdaDatumModel(BaseModel):
    p: int
    q: int
    blocks: list[BlockModel]


class ThetaDatumModel(LambdaDatumModel):
    """
    Schema for a combinatorial theta-stable datum: blocks plus one nu list per block.
    """
    nu: Optional[list[list[Rational]]] = Field(None, description="Nonnegative nu halves in block order; zeros when omitted.")


class AnalyzeRequest(BaseModel):
    """
    Schema for an analysis request: either a full theta-stable datum, or a
    signature with a lowest K-type and nu vectors.
    """
    theta_datum: Optional[ThetaDatumModel] = None
    p: Optional[int] = None
    q: Optional[int] = None
    mu: Optional[str | WeightModel] = None
    nu: Optional[list[list[Rational]]] = None

    @model_validator(mode="after")
    def exactly_one_form(self) -> "AnalyzeRequest":
        has_datum = self.theta_datum is not None
        has_mu_form = any(v is not None for v in (self.p, self.q, self.mu, self.nu))
        if has_datum == has_mu_form:
            raise ValueError("give either theta_datum or {p, q, mu, nu}, not both or neither")
        if has_mu_form and (self.p is None or self.q is None or self.mu is None):
            raise ValueError("the {p, q, mu, nu} form needs p, q and mu")
        return self


class FromMuRequest(BaseModel):
    p: int
    q: int
    mu: str | WeightModel
    nu: Optional[list[list[Rational]]] = None


class SegmentModel(BaseModel):
    e: str
    b: str


class CertificateModel(BaseModel):
    kind: str
    level: str
    witness_ktypes: list[WeightModel]
    block_range: list[int]
    branch: str


class DiracViolationModel(BaseModel):
    mu: WeightModel
    level: str
    best_norm_sq: str
    inf_char_norm_sq: str


class ScreeningReportModel(BaseModel):
    """
    Screening report; the field order here is the JSON field order.
    """
    inf_char: list[str]
    hermitian_ok: bool
    violations: list[str]
    unitarily_small: bool
    fpp_applicable: bool
    fpp_pass: bool
    max_gap: str
    hull_pass: bool
    lambda_u_center: list[str]
    good_cuts: list[int]
    good_parts: list[list[int]]
    inner_data: list[ThetaDatumModel]
    fundamental: list[list[int]]
    component_gaps: list[str]
    segments: list[SegmentModel]
    interlaced: bool
    lambda_large: list[int]
    lambda_large_below: list[int]
    dirac_violations: list[DiracViolationModel]
    certificates: list[CertificateModel]
    verdict: str
    notes: list[str]


class FromMuResponse(BaseModel):
    datum: ThetaDatumModel
    report: ScreeningReportModel


class EnumerateLine(BaseModel):
    datum: ThetaDatumModel
    mu: WeightModel
    report: ScreeningReportModel


def _rationals(values) -> list[str]:
    return [format_rational(x) for x in values]


def weight_to_model(mu: KTypeWeight) -> WeightModel:
    """Converts a K-type weight to its {"left", "right"} JSON form."""
    return WeightModel(left=list(mu.left), right=list(mu.right))


def weight_from_input(mu: str | WeightModel) -> KTypeWeight:
    """
    Accepts either the string form "a,b|c,d" or a WeightModel.

    Raises
    ------
    ParseError
        If the string form is malformed.
    NonDominantWeightError
        If either side is not weakly decreasing.
    """
    if isinstance(mu, str):
        return KTypeWeight.from_string(mu)
    return KTypeWeight(tuple(mu.left), tuple(mu.right))


def theta_datum_to_model(td: ThetaDatum) -> ThetaDatumModel:
    """Serializes a datum with every rational written as "a/b"."""
    return ThetaDatumModel(
        p=td.sig.p,
        q=td.sig.q,
        blocks=[
            BlockModel(shape=b.shape.value, r=b.r, s=b.s, gamma=format_rational(b.gamma)) for b in td.blocks
        ],
        nu=[_rationals(nu) for nu in td.nus],
    )


def theta_datum_from_model(model: ThetaDatumModel) -> ThetaDatum:
    blocks = tuple(
        Block(BlockShape(b.shape), b.r, b.s, parse_rational(b.gamma)) for b in model.blocks
    )
    nus = model.nu if model.nu is not None else [[0] * min(b.r, b.s) for b in blocks]
    return ThetaDatum(
        LambdaDatum(Signature(model.p, model.q), blocks),
        tuple(tuple(parse_rational(x) for x in nu) for nu in nus),
    )


def request_to_theta_datum(request: AnalyzeRequest) -> ThetaDatum:
    """Builds the datum of either request form; the mu form goes through the K-type bijection."""
    if request.theta_datum is not None:
        return theta_datum_from_model(request.theta_datum)
    return theta_datum_from_mu(weight_from_input(request.mu), Signature(request.p, request.q), request.nu)


def _certificate_to_model(cert: Certificate) -> CertificateModel:
    return CertificateModel(
        kind=cert.kind.value,
        level=cert.level.value,
        witness_ktypes=[weight_to_model(w) for w in cert.witness_ktypes],
        block_range=list(cert.block_range),
        branch=cert.branch,
    )


def _dirac_to_model(v: DiracViolation) -> DiracViolationModel:
    return DiracViolationModel(
        mu=weight_to_model(v.mu),
        level=v.level.value,
        best_norm_sq=format_rational(v.best_norm_sq),
        inf_char_norm_sq=format_rational(v.inf_char_norm_sq),
    )


def _ranges(ranges) -> list[list[int]]:
    return [[r.start, r.stop] for r in ranges]


def report_to_model(report: ScreeningReport) -> ScreeningReportModel:
    """Converts a screening report to its JSON schema, preserving field order."""
    return ScreeningReportModel(
        inf_char=_rationals(report.inf_char.coords),
        hermitian_ok=report.hermitian_ok,
        violations=list(report.violations),
        unitarily_small=report.unitarily_small,
        fpp_applicable=report.fpp_applicable,
        fpp_pass=report.fpp_pass,
        max_gap=format_rational(report.max_gap),
        hull_pass=report.hull_pass,
        lambda_u_center=_rationals(report.lambda_u_center),
        good_cuts=list(report.good_cuts),
        good_parts=_ranges(report.good_parts),
        inner_data=[theta_datum_to_model(td) for td in report.inner_data],
        fundamental=_ranges(report.fundamental.groups),
        component_gaps=_rationals(report.component_gaps),
        segments=[SegmentModel(e=format_rational(s.e), b=format_rational(s.b)) for s in report.segments],
        interlaced=report.interlaced,
        lambda_large=list(report.lambda_large),
        lambda_large_below=list(report.lambda_large_below),
        dirac_violations=[_dirac_to_model(v) for v in report.dirac_violations],
        certificates=[_certificate_to_model(c) for c in report.certificates],
        verdict=report.verdict.value,
        notes=list(report.notes),
    )


def enumerate_line(td: ThetaDatum, report: ScreeningReport) -> EnumerateLine:
    return EnumerateLine(
        datum=theta_datum_to_model(td),
        mu=weight_to_model(mu_from_datum(td.datum)),
        report=report_to_model(report),
    )


def dump_json(model: BaseModel) -> str:
    """Compact, byte-stable JSON."""
    return json.dumps(model.model_dump(mode="json"), separators=(",", ":"))


def parse_request(text: str) -> AnalyzeRequest:
    """
    Parses an analysis request from JSON text.

    Raises
    ------
    ParseError
        If the text is not JSON or does not fit the request schema.
    """
    try:
        return AnalyzeRequest.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(e, sys)
