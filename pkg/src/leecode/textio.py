"""Plain-text formats for ring elements, polynomials, and words.

Element: ``[c0,c1,...,c{m-1}]`` with decimal residues.
Ring header: ``GR(q,m):f=[f0,...,fm]`` with q = p^r.
Univariate polynomial: ``poly{[e0];[e1];...}`` ascending.
Bivariate polynomial: one line ``i j [coef]`` per term.
Ring-element word: elements joined by ``;`` on one line.
Z4 word: comma-separated digits on one line.
"""
from __future__ import annotations

import re

from .poly import BiPoly, UniPoly
from .ring import GaloisRingParams, RingElem, construct_galois_ring, prime_factors


def format_elem(x: RingElem) -> str:
    return "[" + ",".join(str(c) for c in x.coeffs()) + "]"


def parse_elem(params: GaloisRingParams, text: str) -> RingElem:
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"bad element literal: {text!r}")
    digits = [int(c) for c in text[1:-1].split(",")] if text != "[]" else []
    if len(digits) != params.m:
        raise ValueError(f"expected {params.m} coordinates, got {len(digits)}")
    return params.elem_from_coeffs(digits)


def format_ring(params: GaloisRingParams) -> str:
    body = ",".join(str(c) for c in params.f)
    return f"GR({params.q},{params.m}):f=[{body}]"


def parse_ring(text: str) -> GaloisRingParams:
    m = re.fullmatch(r"GR\((\d+),(\d+)\):f=\[([0-9,\s]+)\]", text.strip())
    if not m:
        raise ValueError(f"bad ring header: {text!r}")
    q, deg = int(m.group(1)), int(m.group(2))
    fdigits = [int(c) for c in m.group(3).split(",")]
    p = prime_factors(q)[0]
    r = 0
    qq = q
    while qq > 1:
        qq //= p
        r += 1
    if p**r != q:
        raise ValueError(f"{q} is not a prime power")
    built = construct_galois_ring(p, r, deg)
    if list(built.f) != fdigits:
        # accept any valid header, not only the canonical searched one
        return GaloisRingParams(p, r, deg, fdigits)
    return built


def format_unipoly(f: UniPoly) -> str:
    return "poly{" + ";".join(format_elem(c) for c in f.coeffs) + "}"


def parse_unipoly(params: GaloisRingParams, text: str) -> UniPoly:
    text = text.strip()
    if not (text.startswith("poly{") and text.endswith("}")):
        raise ValueError(f"bad polynomial literal: {text!r}")
    body = text[len("poly{") : -1]
    if not body:
        return UniPoly.zero(params)
    return UniPoly(params, [parse_elem(params, tok) for tok in body.split(";")])


def format_bipoly(Q: BiPoly) -> str:
    return "\n".join(f"{i} {j} {format_elem(c)}" for (i, j), c in Q.sorted_terms())


def parse_bipoly(params: GaloisRingParams, text: str) -> BiPoly:
    terms = {}
    for line in text.strip().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        i_s, j_s, elem_s = line.split(None, 2)
        terms[(int(i_s), int(j_s))] = parse_elem(params, elem_s)
    return BiPoly(params, terms)


def format_word(word) -> str:
    return ";".join(format_elem(x) for x in word)


def parse_word(params: GaloisRingParams, text: str) -> list[RingElem]:
    return [parse_elem(params, tok) for tok in text.strip().split(";")]


def format_z4_word(word) -> str:
    return ",".join(str(int(x) % 4) for x in word)


def parse_z4_word(text: str) -> list[int]:
    return [int(tok) % 4 for tok in text.strip().split(",")]
