"""JSON encoding of series with exact "p/q" coefficients.

A document is ``{"terms": [...], "policy": {...}, "meta": {...}}``.  Each term is
``{"monomial": {"nu_2": 1, "t_0": 3}, "coeff": "1/2"}``.  The pseudo-variable
``q`` may appear in a monomial when a Q(q)-series has been expanded in q.
Terms are ordered by (weight, t-degree, monomial) and keys are sorted, so equal
inputs give byte-identical output.
"""

from __future__ import annotations

import json
from fractions import Fraction

from kfock.qfield import QRat, taylor_coeffs
from kfock.series import (
    QQ,
    MultiSeries,
    TruncationPolicy,
    mono_from_dict,
    mono_sort_key,
    parse_var,
    var_name,
)

Q_VAR = "q"


def fraction_str(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_fraction(text):
    """Exact rational from "p/q" or an integer string; floats are refused."""
    if not isinstance(text, str):
        raise ValueError(f"expected a string, got {type(text).__name__}")
    s = text.strip()
    if any(ch in s for ch in ".eE"):
        raise ValueError(f"{text!r} is not an exact rational")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"{text!r} is not a rational 'p/q'") from exc


def monomial_dict(m, qpow=0):
    out = {var_name(v): e for v, e in m}
    if qpow:
        out[Q_VAR] = qpow
    return out


def series_terms(s, qorder=None):
    """List of term objects.  Q(q) coefficients need ``qorder`` (Taylor order at 0)."""
    out = []
    for m, c in s.items():
        if s.field == QQ:
            out.append({"monomial": monomial_dict(m), "coeff": fraction_str(c)})
            continue
        if qorder is None:
            raise ValueError("a Q(q)-series needs a q-order to be written with rational coefficients")
        for k, ck in enumerate(taylor_coeffs(c, qorder)):
            if ck:
                out.append({"monomial": monomial_dict(m, k), "coeff": fraction_str(ck)})
    if s.field != QQ:
        out.sort(key=lambda t: (mono_sort_key(_mono_of(t["monomial"])), t["monomial"].get(Q_VAR, 0)))
    return out


def _mono_of(md):
    return mono_from_dict({parse_var(k): e for k, e in md.items() if k != Q_VAR})


def document(s=None, policy=None, meta=None, qorder=None):
    policy = policy or (s.policy if s is not None else TruncationPolicy())
    return {
        "terms": [] if s is None else series_terms(s, qorder),
        "policy": policy.as_dict(),
        "meta": dict(meta or {}),
    }


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2)


def loads_series(text_or_doc):
    """Inverse of :func:`document` for rational series (no ``q`` in monomials)."""
    doc = json.loads(text_or_doc) if isinstance(text_or_doc, str) else text_or_doc
    policy = TruncationPolicy(**doc["policy"])
    terms = {}
    for t in doc["terms"]:
        if Q_VAR in t["monomial"]:
            raise ValueError("q-expanded series cannot be read back as a rational series")
        m = _mono_of(t["monomial"])
        terms[m] = terms.get(m, 0) + parse_fraction(t["coeff"])
    return MultiSeries(terms, policy)


def qrat_json(c):
    """A Q(q) value as {"num": [...], "den": [...]} with coefficient strings, low degree first."""
    c = c if isinstance(c, QRat) else QRat.const(c)
    return {"num": [fraction_str(x) for x in c.num], "den": [fraction_str(x) for x in c.den]}


def validate_document(doc):
    """Raise ValueError unless ``doc`` has the series document shape."""
    if set(doc) != {"terms", "policy", "meta"}:
        raise ValueError(f"unexpected top-level keys {sorted(doc)}")
    if set(doc["policy"]) != {"R", "D", "K_t", "T"}:
        raise ValueError("policy must have R, D, K_t, T")
    if not isinstance(doc["meta"], dict):
        raise ValueError("meta must be an object")
    for t in doc["terms"]:
        if set(t) != {"monomial", "coeff"}:
            raise ValueError(f"bad term {t}")
        for k, e in t["monomial"].items():
            if k != Q_VAR:
                parse_var(k)
            if not isinstance(e, int) or e <= 0:
                raise ValueError(f"bad exponent {e} for {k}")
        parse_fraction(t["coeff"])
    return True
