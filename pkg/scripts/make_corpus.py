#!/usr/bin/env python3
"""Regenerate the shipped corpus (src/formations/data/corpus.json).

Semidirect products are emitted as explicit permutation generators; every
entry is rebuilt from its spec text and checked for the expected order and
structural tags before being written.
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from formations.dsl import parse_group
from formations.groups import Permutation
from formations.storage import CorpusEntry, write_corpus
from formations.structure import is_schmidt, profile


def cyc_str(images) -> str:
    return "".join("(" + " ".join(str(p + 1) for p in c) + ")"
                   for c in Permutation(tuple(images)).cycles()) or "(1)"


def perm_spec(degree: int, gens: list[list[int]]) -> str:
    return f"perm {degree}: " + ", ".join(cyc_str(g) for g in gens)


def metacyclic(n: int, k: int, m: int) -> str:
    """C_n x| C_m with the action x -> x^k (extra m-cycle if unfaithful)."""
    ord_k, t = 1, k % n
    while t != 1:
        t = (t * k) % n
        ord_k += 1
    if m % ord_k:
        raise ValueError(f"action order {ord_k} does not divide {m}")
    extra = m if ord_k < m else 0
    deg = n + extra
    x = list(range(deg))
    for i in range(n):
        x[i] = (i + 1) % n
    y = list(range(deg))
    for i in range(n):
        y[i] = (k * i) % n
    for j in range(extra):
        y[n + j] = n + (j + 1) % m
    return perm_spec(deg, [x, y])


# F8 = F2[t]/(t^3 + t + 1); elements indexed c0 + 2*c1 + 4*c2
def _f8_mul_t(v: int) -> int:
    c0, c1, c2 = v & 1, (v >> 1) & 1, (v >> 2) & 1
    return (c2) | ((c0 ^ c2) << 1) | (c1 << 2)


def _f8_square(v: int) -> int:
    c0, c1, c2 = v & 1, (v >> 1) & 1, (v >> 2) & 1
    return c0 | (c2 << 1) | ((c1 ^ c2) << 2)


def agl8(with_frobenius: bool) -> str:
    trans = [v ^ 1 for v in range(8)]
    mult = [_f8_mul_t(v) for v in range(8)]
    gens = [trans, mult]
    if with_frobenius:
        gens.append([_f8_square(v) for v in range(8)])
    return perm_spec(8, gens)


def affine_f_p2(p: int, mat: tuple[tuple[int, int], tuple[int, int]]) -> str:
    """(C_p)^2 x| <mat> acting on p^2 points; generators: one translation
    and the linear map."""
    pts = [(a, b) for a in range(p) for b in range(p)]
    idx = {v: i for i, v in enumerate(pts)}
    t1 = [idx[((a + 1) % p, b)] for a, b in pts]
    t2 = [idx[(a, (b + 1) % p)] for a, b in pts]
    m = [idx[((mat[0][0] * a + mat[0][1] * b) % p, (mat[1][0] * a + mat[1][1] * b) % p)]
         for a, b in pts]
    return perm_spec(p * p, [t1, t2, m])


def heisenberg3() -> str:
    """Unitriangular 3x3 matrices over F3 acting on column vectors."""
    pts = [(a, b, c) for c in range(3) for b in range(3) for a in range(3)]
    idx = {v: i for i, v in enumerate(pts)}
    x = [idx[((a + b) % 3, b, c)] for a, b, c in pts]
    y = [idx[(a, (b + c) % 3, c)] for a, b, c in pts]
    return perm_spec(27, [x, y])


def dicyclic_2power(n: int) -> str:
    """Generalized quaternion group of order 4n (n a 2-power) via its
    regular representation: x of order 2n, y^2 = x^n, x^y = x^-1."""
    order = 4 * n
    elems = [(a, e) for e in (0, 1) for a in range(2 * n)]
    idx = {v: i for i, v in enumerate(elems)}

    def mul(u, v):
        a, e = u
        b, f = v
        if e == 0:
            return ((a + b) % (2 * n), f)
        if f == 0:
            return ((a - b) % (2 * n), 1)
        return ((a - b + n) % (2 * n), 0)

    def rho(gen):
        return [idx[mul(elems[i], gen)] for i in range(order)]

    return perm_spec(order, [rho((1, 0)), rho((0, 1))])


ENTRIES: list[tuple[str, str, list[str]]] = []


def add(name, spec, *tags):
    ENTRIES.append((name, spec, list(tags)))


# --- cyclic groups (nilpotent; prime counts 1-4) -----------------------------
for n in (1, 2, 3, 4, 5, 6, 7, 8, 9, 12, 15, 16, 20, 24, 30, 60, 105, 210, 420):
    add(f"C{n}", f"C{n}", "abelian", "nilpotent")

# --- abelian, noncyclic ------------------------------------------------------
add("V4", "V4", "abelian", "nilpotent")
add("C2xC4", "C2 x C4", "abelian", "nilpotent")
add("E8", "C2 x C2 x C2", "abelian", "nilpotent")
add("C3xC3", "C3 x C3", "abelian", "nilpotent")
add("C4xC4", "C4 x C4", "abelian", "nilpotent")
add("C6xC10", "C6 x C10", "abelian", "nilpotent")
add("C6xC6", "C6 x C6", "abelian", "nilpotent")

# --- nonabelian p-groups -----------------------------------------------------
add("D8", "D8", "nilpotent", "p-group")
add("Q8", "Q8", "nilpotent", "p-group")
add("D16", "D16", "nilpotent", "p-group")
add("Q16", dicyclic_2power(4), "nilpotent", "p-group")
add("SD16", metacyclic(8, 3, 2), "nilpotent", "p-group")
add("He3", heisenberg3(), "nilpotent", "p-group", "exponent3")
add("M27", metacyclic(9, 4, 3), "nilpotent", "p-group")

# --- dihedral / dicyclic -----------------------------------------------------
for n in (10, 12, 14, 18, 20, 24, 30):
    add(f"D{n}", f"D{n}", "soluble")
add("Dic3", metacyclic(3, 2, 4), "soluble", "schmidt")
add("Dic5", metacyclic(5, 4, 4), "soluble", "schmidt")
add("Dic7", metacyclic(7, 6, 4), "soluble")

# --- symmetric / alternating -------------------------------------------------
add("S3", "S3", "soluble", "schmidt")
add("S4", "S4", "soluble")
add("S5", "S5", "insoluble", "control")
add("S6", "S6", "insoluble", "control", "big")
add("A4", "A4", "soluble", "schmidt")
add("A5", "A5", "insoluble", "control")
add("A6", "A6", "insoluble", "control", "big")

# --- Schmidt / Frobenius / critical semidirect products ----------------------
add("SL23", "SL23", "soluble", "schmidt")
add("Frob21", "Frob21", "soluble", "schmidt", "frobenius")
add("F20", metacyclic(5, 2, 4), "soluble", "frobenius")
add("F42", metacyclic(7, 3, 6), "soluble", "frobenius")
add("C13:C3", metacyclic(13, 3, 3), "soluble", "schmidt", "frobenius")
add("C13:C4", metacyclic(13, 5, 4), "soluble", "frobenius")
add("C11:C5", metacyclic(11, 3, 5), "soluble", "schmidt", "frobenius")
add("C3:C8", metacyclic(3, 2, 8), "soluble", "schmidt")
add("C5:C8", metacyclic(5, 2, 8), "soluble")
add("G18", affine_f_p2(3, ((2, 0), (0, 2))), "soluble")
add("G36", affine_f_p2(3, ((0, 2), (1, 0))), "soluble", "critical")
add("Schmidt75", affine_f_p2(5, ((0, 4), (1, 4))), "soluble", "schmidt")
add("Schmidt56", agl8(False), "soluble", "schmidt")
add("AGL168", agl8(True), "soluble")

# --- direct products mixing 2-4 primes ---------------------------------------
add("S3xC5", "S3 x C5", "soluble")
add("S3xC25", "S3 x C25", "soluble")
add("S3xC35", "S3 x C35", "soluble")
add("S3xS3", "S3 x S3", "soluble")
add("S3xA4", "S3 x A4", "soluble")
add("S3xC105", "S3 x C105", "soluble", "big")
add("A4xC5", "A4 x C5", "soluble")
add("A4xC7", "A4 x C7", "soluble")
add("A4xC25", "A4 x C25", "soluble")
add("A4xC35", "A4 x C35", "soluble")
add("S4xC5", "S4 x C5", "soluble")
add("S4xC7", "S4 x C7", "soluble")
add("S4xC25", "S4 x C25", "soluble", "big")
add("SL23xC5", "SL23 x C5", "soluble")
add("SL23xC7", "SL23 x C7", "soluble")
add("Frob21xC2", "Frob21 x C2", "soluble")
add("Frob21xC4", "Frob21 x C4", "soluble")
add("Frob21xC10", "Frob21 x C10", "soluble")
add("Frob21xC25", "Frob21 x C25", "soluble")
add("F20xC3", metacyclic(5, 2, 4) + " x C3", "soluble")
add("F20xC7", metacyclic(5, 2, 4) + " x C7", "soluble")
add("F20xC21", metacyclic(5, 2, 4) + " x C21", "soluble")
add("Dic3xC5", metacyclic(3, 2, 4) + " x C5", "soluble")
add("Dic5xC3", metacyclic(5, 4, 4) + " x C3", "soluble")
add("Q8xC15", "Q8 x C15", "nilpotent")
add("D8xC15", "D8 x C15", "nilpotent")
add("He3xC2", heisenberg3() + " x C2", "nilpotent")
add("G36xC5", affine_f_p2(3, ((0, 2), (1, 0))) + " x C5", "soluble")
add("Schmidt56xC3", agl8(False) + " x C3", "soluble")
add("Schmidt56xC9", agl8(False) + " x C9", "soluble")
add("Schmidt75xC2", affine_f_p2(5, ((0, 4), (1, 4))) + " x C2", "soluble")
add("C3:C8xC5", metacyclic(3, 2, 8) + " x C5", "soluble")
add("D10xFrob21", "D10 x Frob21", "soluble")

EXPECTED_ORDERS = {
    "Q16": 16, "SD16": 16, "He3": 27, "M27": 27, "Dic3": 12, "Dic5": 20,
    "Dic7": 28, "F20": 20, "F42": 42, "C13:C3": 39, "C13:C4": 52,
    "C11:C5": 55, "C3:C8": 24, "C5:C8": 40, "G18": 18, "G36": 36,
    "Schmidt75": 75, "Schmidt56": 56, "AGL168": 168,
}


def main():
    out = []
    seen = set()
    for name, spec, tags in ENTRIES:
        assert name not in seen, f"duplicate {name}"
        seen.add(name)
        g = parse_group(spec, name=name)
        if name in EXPECTED_ORDERS:
            assert g.order == EXPECTED_ORDERS[name], (name, g.order)
        prof = profile(g)
        assert prof.soluble == ("insoluble" not in tags), name
        if prof.nilpotent:
            assert "nilpotent" in tags or "p-group" in tags, name
        if "schmidt" in tags:
            assert is_schmidt(g), f"{name} is tagged schmidt but is not"
        pi_tag = f"pi{len(prof.pi)}"
        entry_tags = sorted(set(tags) | {pi_tag})
        out.append(CorpusEntry(name=name, spec=spec, tags=tuple(entry_tags)))
        print(f"{name:>14}  order {g.order:>4}  pi {prof.pi}  tags {entry_tags}")
    dest = Path(__file__).resolve().parent.parent / "src" / "formations" / "data" / "corpus.json"
    write_corpus(out, dest)
    print(f"\nwrote {len(out)} groups to {dest}")


if __name__ == "__main__":
    main()
