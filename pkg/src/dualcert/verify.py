"""Property suites behind ``dualcert verify``.

Each suite returns a list of :class:`PropertyResult`; a suite passes when all
its properties do. All randomness flows from one seed.
"""
from dataclasses import dataclass

import numpy as np

from . import randgen
from .bases import (
    builtin_bases,
    dual_basis,
    gamma,
    pauli_basis,
    scaled_unit_basis,
    shift_and_clock,
    standard_basis,
    tensor_power,
    weyl_basis,
)
from .choi import (
    builtin_map,
    choi_matrix,
    conjugate_choi,
    generalized_choi,
    is_cp,
    jamiolkowski,
    pauli_block_condition,
    pauli_tensor_condition,
)
from .classify import (
    COMPLETE,
    COPOSITIVE,
    NOT_ORDER_ISO,
    classify_duality,
    classify_scaled_unit,
)
from .linalg import fro, is_psd, partial_transpose, unit
from .superop import apply_inverse, change_of_basis, m_map, transpose_map
from .witness import build_witness, validate_witness

PAULI_M = np.array([[2, 0, 0, 0], [0, 0, 2, 0], [0, 2, 0, 0], [0, 0, 0, 2]], dtype=complex)


@dataclass(frozen=True)
class PropertyResult:
    suite: str
    name: str
    passed: bool
    max_residual: float

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.suite:<12} {self.name:<58} max_residual={self.max_residual:.3e}"


def _res(suite, name, passed, residual=0.0):
    return PropertyResult(suite, name, bool(passed), float(residual))


def map_corpus(rng, ns=(2, 3), ps=(2, 3), num_cp=50, num_noncp=25):
    """Random Kraus maps followed by random non-CP Hermiticity-preserving maps."""
    maps = []
    for _ in range(num_cp):
        maps.append(randgen.random_kraus_map(rng, int(rng.choice(ns)), int(rng.choice(ps))))
    for _ in range(num_noncp):
        maps.append(randgen.random_noncp_map(rng, int(rng.choice(ns)), int(rng.choice(ps))))
    return maps


def basis_corpus(rng, n):
    """Bases of M_n with known order type, as ``(label, basis)`` pairs."""
    out = [("standard", standard_basis(n))]
    lam, _ = randgen.random_rank_one_lambda(rng, n)
    out.append(("scaled-unit rank-one", scaled_unit_basis(lam)))
    out.append(("C E_ij C^*", randgen.conjugated_basis(standard_basis(n), randgen.random_invertible(rng, n))))
    out.append(("matrix units", randgen.random_matrix_unit_system(rng, n)))
    sym = randgen.symmetric_antisymmetric_basis(n)
    out.append(("sym/antisym", sym))
    out.append(("C sym/antisym C^*", randgen.conjugated_basis(sym, randgen.random_invertible(rng, n))))
    if n == 2:
        out.append(("weyl:2", weyl_basis(2)))
        out.append(("pauli", pauli_basis()))
        out.append(("pauli:normalized", pauli_basis(normalized=True)))
    return out


def suite_pauli(rng, max_n=6):
    s = "pauli"
    out = []
    dev = np.abs(m_map(pauli_basis()).mat - PAULI_M).max()
    out.append(_res(s, "M_B equals twice the transpose map", dev <= 1e-12, dev))
    v = classify_duality(pauli_basis())
    out.append(_res(s, "pauli classifies CoPositiveOrderIso", v.kind == COPOSITIVE,
                    v.diagnostics.get("action_residual", np.inf)))
    tp = tensor_power(pauli_basis(), 2)
    dev = np.abs(m_map(tp).mat - 4 * transpose_map(4).mat).max()
    out.append(_res(s, "2-qubit spin basis M_B = 4 t", dev <= 1e-12, dev))
    v = classify_duality(tp)
    out.append(_res(s, "2-qubit spin basis classifies CoPositiveOrderIso", v.kind == COPOSITIVE,
                    v.diagnostics.get("action_residual", np.inf)))

    corpus = map_corpus(rng, ns=(2,))
    bad = worst = 0
    for m in corpus:
        block = pauli_block_condition(m)
        worst = max(worst, fro(block - 2 * choi_matrix(m)))
        bad += is_psd(block) != is_cp(m)
    out.append(_res(s, f"block criterion <=> CP on {len(corpus)} maps", bad == 0, worst))

    bad = 0
    for m in map_corpus(rng, ns=(4,), ps=(2, 3), num_cp=13, num_noncp=12):
        bad += is_psd(pauli_tensor_condition(m, 2)) != is_cp(m)
    out.append(_res(s, "2-qubit tensor criterion <=> CP on 25 maps", bad == 0, float(bad)))
    return out


def weyl_cw_entry(n, a, b, c, d):
    z = np.exp(2j * np.pi / n)
    return z ** (d * b) * ((b + c) % n == a) / np.sqrt(n)


def suite_weyl(rng, max_n=6):
    s = "weyl"
    out = []
    worst_c = worst_m = worst_u = 0.0
    exact = True
    for n in range(2, max_n + 1):
        cw = change_of_basis(weyl_basis(n)).mat
        mw = m_map(weyl_basis(n)).mat
        u, v = shift_and_clock(n)
        z = np.exp(2j * np.pi / n)
        for a in range(n):
            for b in range(n):
                uv = np.linalg.matrix_power(u, a) @ np.linalg.matrix_power(v, b)
                expansion = sum(z ** (b * j) * unit(n, (j + a) % n, j) for j in range(n))
                worst_u = max(worst_u, np.abs(uv - expansion).max())
                for c in range(n):
                    for d in range(n):
                        row, col = a * n + b, c * n + d
                        worst_c = max(worst_c, abs(cw[row, col] - weyl_cw_entry(n, a, b, c, d)))
                        want = float(b == (-d) % n and a == (c - 2 * d) % n)
                        worst_m = max(worst_m, abs(mw[row, col] - want))
        # the action on matrix units is an exact permutation after rounding
        for c in range(n):
            for d in range(n):
                img = np.round(mw @ unit(n, c, d).reshape(-1), 12).reshape(n, n)
                exact &= np.array_equal(img, unit(n, (c - 2 * d) % n, (-d) % n))
    out.append(_res(s, f"U^aV^b = sum_j z^(bj) E_(j+a,j), n<= {max_n}", worst_u <= 1e-12, worst_u))
    out.append(_res(s, "[C_W]_(ab,cd) = z^(db) delta_(b+c,a) / sqrt n", worst_c <= 1e-10, worst_c))
    out.append(_res(s, "[C_W C_W^T]_(ab,cd) = delta_(b,-d) delta_(a,c-2d)", worst_m <= 1e-10, worst_m))
    out.append(_res(s, "M_W(E_cd) = E_(c-2d,-d)", exact, 0.0))

    v = classify_duality(weyl_basis(2))
    dev = max(fro(v.action(unit(2, i, j)) - unit(2, i, j)) for i in range(2) for j in range(2)) \
        if v.C is not None else np.inf
    out.append(_res(s, "weyl:2 CompleteOrderIso with identity action", v.kind == COMPLETE and dev <= 1e-9, dev))
    for n in range(3, min(max_n, 5) + 1):
        v = classify_duality(weyl_basis(n))
        r = min(v.diagnostics["k1_rank_one_residual"], v.diagnostics["k2_rank_one_residual"])
        out.append(_res(s, f"weyl:{n} NotOrderIso, residuals > 0.1", v.kind == NOT_ORDER_ISO and r > 0.1, r))
    return out


def suite_rankone(rng, max_n=6):
    s = "rankone"
    out = []
    worst = 0.0
    ok = True
    for trial in range(100):
        n = 2 + trial % 2
        lam, _ = randgen.random_rank_one_lambda(rng, n)
        v = classify_scaled_unit(lam)
        ok &= v.kind == COMPLETE
        if v.kind != COMPLETE:
            continue
        sq = lam * lam
        for i in range(n):
            for j in range(n):
                worst = max(worst, fro(v.action(unit(n, i, j)) - sq[i, j] * unit(n, i, j)))
        full = classify_duality(scaled_unit_basis(lam))
        ok &= full.kind == COMPLETE
        for i in range(n):
            for j in range(n):
                e = unit(n, i, j)
                worst = max(worst, fro(full.action(e) - v.action(e)))
    out.append(_res(s, "100 rank-one lambda^2 grids: CompleteOrderIso, diag C", ok and worst <= 1e-8, worst))

    lam = np.ones((2, 2), dtype=complex)
    lam[0, 0] = 1j
    v1, v2 = classify_scaled_unit(lam), classify_duality(scaled_unit_basis(lam))
    out.append(_res(s, "lambda_11 = i example: NotOrderIso",
                    v1.kind == NOT_ORDER_ISO and v2.kind == NOT_ORDER_ISO, 0.0))

    agree = True
    for trial in range(40):
        n = 2 + trial % 2
        lam = randgen.ginibre(rng, n)
        agree &= classify_scaled_unit(lam).kind == classify_duality(scaled_unit_basis(lam)).kind
    out.append(_res(s, "closed form agrees with classify on generic grids", agree, 0.0))
    return out


def suite_conjugate(rng, max_n=6):
    s = "conjugate"
    out = []
    maps = [randgen.random_kraus_map(rng, 2 + k % 2, 2 + (k // 2) % 2) for k in range(5)]
    maps += [randgen.random_noncp_map(rng, 2 + k % 2, 2 + (k // 2) % 2) for k in range(5)]
    worst_rel = worst_j = 0.0
    exact = True
    for m in maps:
        c = choi_matrix(m)
        j = jamiolkowski(m)
        exact &= np.array_equal(j, partial_transpose(c, "first", (m.n, m.p)))
        exact &= np.array_equal(conjugate_choi(m, standard_basis(m.n)), c)
        for _ in range(2):
            onb = randgen.random_onb(rng, m.n)
            cc = conjugate_choi(m, onb)
            worst_rel = max(worst_rel, np.abs(cc - c).max() / (1 + fro(c)))
            worst_j = max(worst_j, np.abs(partial_transpose(cc, "first", (m.n, m.p)) - j).max() / (1 + fro(c)))
    out.append(_res(s, "sum conj(B_l) (x) Phi(B_l) = C_Phi over random ONBs", worst_rel <= 1e-9, worst_rel))
    out.append(_res(s, "J(Phi) = PT_first(C_Phi) exactly", exact, 0.0))
    out.append(_res(s, "J(Phi) = PT_first(conjugate form) over random ONBs", worst_j <= 1e-9, worst_j))
    return out


def suite_genlchoi(rng, max_n=6):
    s = "genlchoi"
    out = []
    corpus = map_corpus(rng)
    bases = {n: basis_corpus(rng, n) for n in (2, 3)}
    verdicts = {n: [(lbl, b, classify_duality(b)) for lbl, b in bases[n]] for n in bases}
    disagreements = checks = 0
    for m in corpus:
        cp = is_cp(m)
        for _, b, v in verdicts[m.n]:
            if v.kind == COMPLETE:
                checks += 1
                disagreements += is_psd(generalized_choi(m, b, False)) != cp
            elif v.kind == COPOSITIVE:
                checks += 1
                disagreements += is_psd(generalized_choi(m, b, True)) != cp
    out.append(_res(s, f"CP <=> PSD generalized Choi ({checks} checks)", disagreements == 0, float(disagreements)))
    kinds_ok = all(
        v.kind == (COPOSITIVE if "sym" in lbl or "pauli" in lbl else COMPLETE)
        for n in verdicts for lbl, _, v in verdicts[n]
    )
    out.append(_res(s, "corpus bases classify as constructed", kinds_ok, 0.0))
    return out


def suite_duality(rng, max_n=4):
    s = "duality"
    bases = dict(builtin_bases(max_n))
    for n in range(2, max_n + 1):
        lam, _ = randgen.random_rank_one_lambda(rng, n)
        bases[f"scaled_unit:{n}"] = scaled_unit_basis(lam)
    worst_main = worst_key = worst_gamma = 0.0
    for basis in bases.values():
        mb = m_map(basis)
        cbt = change_of_basis(basis).mat.T
        dual = dual_basis(basis)
        n = basis.n
        for j, (b, d) in enumerate(zip(basis.elements, dual.densities)):
            worst_main = max(worst_main, np.abs(apply_inverse(mb, b) - d.T).max())
            e = np.zeros(n * n)
            e[j] = 1.0
            worst_key = max(worst_key, np.abs(cbt @ d.T.reshape(-1) - e).max())
            worst_gamma = max(worst_gamma, np.abs(gamma(basis, d) - b).max())
    return [
        _res(s, f"M_B^-1 B_j = D_j^t over {len(bases)} bases", worst_main <= 1e-9, worst_main),
        _res(s, "C_B^T vec(D_j^t) = vec(E_j)", worst_key <= 1e-9, worst_key),
        _res(s, "Gamma_B(D_j) = B_j", worst_gamma <= 1e-9, worst_gamma),
    ]


def suite_witness(rng, max_n=6, seed=0):
    s = "witness"
    w = build_witness(standard_basis(2), builtin_map("transpose", 2))
    swap = choi_matrix(builtin_map("transpose", 2))
    rep = validate_witness(w, 2, 2, samples=1000, seed=seed)
    pairing = rep.detected_pairing if rep.detected_pairing is not None else np.inf
    return [
        _res(s, "standard + transpose witness is SWAP", np.array_equal(w, swap), fro(w - swap)),
        _res(s, "1000 product pairings >= -1e-12", rep.min_product_pairing >= -1e-12,
                max(0.0, -rep.min_product_pairing)),
        _res(s, "singlet pairing = -1", abs(pairing + 1) <= 1e-9, abs(pairing + 1)),
    ]


def suite_permutation(rng, max_n=4):
    s = "permutation"
    worst = 0.0
    kinds = True
    for basis in builtin_bases(max_n).values():
        ref = m_map(basis).mat
        kind = classify_duality(basis).kind
        for _ in range(20):
            pb = basis.permuted(rng.permutation(len(basis)))
            worst = max(worst, np.abs(m_map(pb).mat - ref).max() / (1 + np.abs(ref).max()))
            kinds &= classify_duality(pb).kind == kind
    return [
        _res(s, "m_map invariant under 20 permutations per basis", worst <= 1e-12, worst),
        _res(s, "verdict kind invariant under permutation", kinds, 0.0),
    ]


SUITES = {
    "pauli": suite_pauli,
    "weyl": suite_weyl,
    "rankone": suite_rankone,
    "conjugate": suite_conjugate,
    "genlchoi": suite_genlchoi,
    "duality": suite_duality,
    "witness": suite_witness,
    "permutation": suite_permutation,
}


def run_suites(names, seed=0, max_n=6):
    results = []
    for name in names:
        rng = randgen.rng_from(seed)
        fn = SUITES[name]
        if name == "witness":
            results.extend(fn(rng, max_n, seed=seed))
        elif name in ("duality", "permutation"):
            results.extend(fn(rng, min(max_n, 4)))
        else:
            results.extend(fn(rng, max_n))
    return results
