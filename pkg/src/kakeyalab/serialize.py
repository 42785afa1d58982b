"""File formats: densities (CSV/JSON), spectra, profiles, certificates, reports.

Exact rationals are rendered as "p/q" strings so JSON round trips never
pass through floats.  JSON output is canonical (sorted keys, fixed
separators, trailing newline), which is what makes byte-identical report
comparisons meaningful.
"""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from math import gcd
from typing import Sequence

import numpy as np

from .geometry import Flat, ProjDirection
from .harmonic import Density, Spectrum
from .maximal import ChainConstant, MaximalProfile
from .ring import RingContext
from .search import KakeyaCertificate
from .verify import VerificationReport

SCHEMA_VERSION = 1


def frac_str(value) -> str:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}" if value.denominator != 1 else str(value.numerator)
    return repr(float(value))


def parse_value(text: str) -> Fraction:
    """Parse 'p/q', an integer, or a decimal literal into a Fraction."""
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as err:
        raise ValueError(f"cannot parse value {text!r}: {err}") from None


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, separators=(",", ": ")) + "\n"


# ---------------------------------------------------------------------------
# densities
# ---------------------------------------------------------------------------


def density_to_csv(f: Density) -> str:
    n = f.ctx.dimension
    if f.lane == "float" and np.iscomplexobj(f.data) and np.abs(f.data.imag).max() > 0:
        raise ValueError("CSV cannot hold complex values; use the JSON format")
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([f"x{i+1}" for i in range(n)] + ["value"])
    values = f.values()
    for i, x in enumerate(f.ctx.points()):
        cell = frac_str(values[i]) if f.lane == "exact" else repr(float(np.real(values[i])))
        writer.writerow(list(x) + [cell])
    return out.getvalue()


def density_from_csv(text: str, ctx: RingContext, lane: str = "exact") -> Density:
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if not header or header[-1] != "value" or len(header) != ctx.dimension + 1:
        raise ValueError(f"bad density header {header!r}: expected x1,...,x{ctx.dimension},value")
    values = [Fraction(0)] * ctx.size
    for row_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != ctx.dimension + 1:
            raise ValueError(f"row {row_no}: expected {ctx.dimension + 1} fields, got {len(row)}")
        try:
            point = tuple(int(c) for c in row[:-1])
            value = parse_value(row[-1])
        except ValueError as err:
            raise ValueError(f"row {row_no}: {err}") from None
        values[ctx.rank(point)] = value
    f = Density.exact(ctx, values)
    return f.to_float() if lane == "float" else f


def density_to_json(f: Density) -> str:
    payload = {
        "schema": SCHEMA_VERSION,
        "kind": "density",
        "modulus": f.ctx.modulus,
        "dimension": f.ctx.dimension,
        "lane": f.lane,
        "values": [frac_str(v) for v in f.values()] if f.lane == "exact"
                  else [[float(np.real(v)), float(np.imag(v))] for v in f.values()],
    }
    return canonical_json(payload)


def density_from_json(text: str, ctx: RingContext) -> Density:
    payload = json.loads(text)
    if payload.get("kind") != "density":
        raise ValueError("not a density file")
    if payload["modulus"] != ctx.modulus or payload["dimension"] != ctx.dimension:
        raise ValueError("density file does not match the configured ring")
    if payload["lane"] == "exact":
        return Density.exact(ctx, [parse_value(v) for v in payload["values"]])
    return Density.from_float(ctx, np.array([complex(re, im) for re, im in payload["values"]]))


def spectrum_to_json(s: Spectrum) -> str:
    freqs = s.frequencies()
    if s.lane == "exact":
        coeffs = [{
            "frequency": list(fr.components),
            "valuation": fr.valuation,
            "root_coefficients": [frac_str(Fraction(int(c), s.den)) for c in s.coeffs[i]],
        } for i, fr in enumerate(freqs)]
    else:
        coeffs = [{
            "frequency": list(fr.components),
            "valuation": fr.valuation,
            "value": [float(s.values[i].real), float(s.values[i].imag)],
        } for i, fr in enumerate(freqs)]
    payload = {
        "schema": SCHEMA_VERSION,
        "kind": "spectrum",
        "modulus": s.ctx.modulus,
        "dimension": s.ctx.dimension,
        "lane": s.lane,
        "coefficients": coeffs,
    }
    return canonical_json(payload)


# ---------------------------------------------------------------------------
# geometry / profiles / certificates
# ---------------------------------------------------------------------------


def flat_to_obj(flat: Flat) -> dict:
    return {"generators": [list(g) for g in flat.generators], "basepoint": list(flat.basepoint)}


def direction_to_obj(d: ProjDirection) -> list[int]:
    return list(d.rep)


def _key_to_obj(key) -> object:
    return direction_to_obj(key) if isinstance(key, ProjDirection) else flat_to_obj(key)


def profile_to_json(profile: MaximalProfile) -> str:
    payload = {
        "schema": SCHEMA_VERSION,
        "kind": "maximal-profile",
        "order": profile.k,
        "entries": [{
            "flat": _key_to_obj(key),
            "value": frac_str(v),
            "witness": list(w),
        } for key, v, w in zip(profile.keys, profile.values, profile.witnesses)],
    }
    return canonical_json(payload)


def profile_to_csv(profile: MaximalProfile) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["flat", "value", "witness"])
    for key, v, w in zip(profile.keys, profile.values, profile.witnesses):
        if isinstance(key, ProjDirection):
            fid = ",".join(map(str, key.rep))
        else:
            fid = ";".join(",".join(map(str, g)) for g in key.generators)
        writer.writerow([fid, frac_str(v), ",".join(map(str, w))])
    return out.getvalue()


def certificate_to_json(cert: KakeyaCertificate) -> str:
    payload = {
        "schema": SCHEMA_VERSION,
        "kind": "kakeya-certificate",
        "modulus": cert.ctx.modulus,
        "dimension": cert.ctx.dimension,
        "k": cert.k,
        "optimal": cert.optimal,
        "size": cert.size,
        "measure": frac_str(cert.measure),
        "points": [list(p) for p in cert.points],
        "witnesses": [{"flat": flat_to_obj(flat), "shift": list(shift)}
                      for flat, shift in cert.witnesses],
    }
    return canonical_json(payload)


def spectrum_from_json(text: str, ctx: RingContext) -> Spectrum:
    payload = json.loads(text)
    if payload.get("kind") != "spectrum":
        raise ValueError("not a spectrum file")
    if payload["modulus"] != ctx.modulus or payload["dimension"] != ctx.dimension:
        raise ValueError("spectrum file does not match the configured ring")
    N = ctx.modulus
    if payload["lane"] == "exact":
        rows = []
        den = 1
        for entry in payload["coefficients"]:
            coeffs = [parse_value(c) for c in entry["root_coefficients"]]
            for c in coeffs:
                den = den * c.denominator // gcd(den, c.denominator)
            rows.append((ctx.rank(entry["frequency"]), coeffs))
        mat = np.zeros((ctx.size, N), dtype=np.int64)
        for rank, coeffs in rows:
            mat[rank] = [int(c * den) for c in coeffs]
        return Spectrum(ctx, coeffs=mat, den=int(den))
    values = np.zeros(ctx.size, dtype=np.complex128)
    for entry in payload["coefficients"]:
        re, im = entry["value"]
        values[ctx.rank(entry["frequency"])] = complex(re, im)
    return Spectrum(ctx, values=values)


def certificate_points_from_json(text: str) -> tuple[int, int, int, list[tuple[int, ...]]]:
    payload = json.loads(text)
    if payload.get("kind") != "kakeya-certificate":
        raise ValueError("not a certificate file")
    return (payload["modulus"], payload["dimension"], payload["k"],
            [tuple(p) for p in payload["points"]])


# ---------------------------------------------------------------------------
# reports and constants
# ---------------------------------------------------------------------------


def _slack_obj(value):
    if value is None:
        return None
    if isinstance(value, Fraction):
        return frac_str(value)
    return float(value)


def report_to_obj(report: VerificationReport, include_timings: bool = False) -> dict:
    obj = {
        "check": report.check,
        "ring": report.ring,
        "trials": report.trials,
        "comparator": report.comparator,
        "worst_slack": _slack_obj(report.worst_slack),
        "status": report.status,
        "witness": report.witness,
        "details": report.details,
    }
    if include_timings:
        obj["wall_time_s"] = round(report.wall_time, 3)
    return obj


def reports_to_json(reports: Sequence[VerificationReport], include_timings: bool = False) -> str:
    payload = {
        "schema": SCHEMA_VERSION,
        "kind": "verification-reports",
        "reports": [report_to_obj(r, include_timings) for r in reports],
        "all_passed": all(r.passed for r in reports),
    }
    return canonical_json(payload)


def _slack_text(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, Fraction):
        if value == 0:
            return "0 (exact)"
        text = frac_str(value)
        return text if len(text) <= 20 else f"~{float(value):.3e}"
    return f"{float(value):.3e}"


def reports_to_table(reports: Sequence[VerificationReport]) -> str:
    headers = ("check", "ring", "trials", "status", "worst slack", "time")
    rows = [(r.check, r.ring, str(r.trials), r.status,
             _slack_text(r.worst_slack), f"{r.wall_time:.2f}s") for r in reports]
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h)
              for i, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)))
    return "\n".join(lines) + "\n"


def chain_to_obj(chain: ChainConstant) -> dict:
    return {
        "dimension": chain.dimension,
        "depth": chain.depth,
        "scales": list(chain.scales),
        "terms": [float(t) for t in chain.terms],
        "partial_sums": [float(s) for s in chain.partial_sums],
        "sum_raised": float(chain.sum_raised),
        "effective_constant": frac_str(chain.effective),
    }


def ledger_to_obj(ledger) -> dict:
    return {
        "modulus": ledger.modulus,
        "dimension": ledger.dimension,
        "maxN_reference": frac_str(ledger.maxN_reference),
        "appendix_constant": frac_str(ledger.appendix),
        "chain": chain_to_obj(ledger.chain) if ledger.chain is not None else None,
    }
