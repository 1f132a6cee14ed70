import logging
import math
from typing import Optional

import numpy as np

from .channel import LlrVector, hard_decision, soft_weight, support_weight
from .codes import LinearCode
from .data_types import DecodeOutcome, DecoderConfig, DecoderKind, Termination
from .gf2 import BitVector, systematize
from .tep import TepSorter

'''
Guessing decoders for binary linear block codes.

Guess counts:
  GND counts syndrome checks, the all-zero TEP included.
  GCD and OSD-GCD count re-encodings, the initial e_R = 0 included. The emission
  that trips the gamma(e_R) >= gamma_opt stop is generated but not counted.
  The oracle reports 2^K.

Operation counts add up every XOR of a packed (N-K)-bit column, the syndrome
of the hard decision included. A GND check costs one XOR per support bit of
the full-length TEP, a GCD re-encoding one per support bit of e_R. OSD-GCD
does not count its per-reception elimination.
'''

ORACLE_MAX_K = 24
ORACLE_CHUNK = 1 << 15


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _pack(bits) -> int:
    return sum(1 << int(i) for i in np.flatnonzero(bits))


def _check_length(code: LinearCode, r: LlrVector):
    if r.length != code.n:
        raise ValueError(f"LLR vector has length {r.length}, code length is {code.n}")


def _outcome(code, r, z, support, guesses, termination, certified, operations) -> DecodeOutcome:
    tep = BitVector.from_support(code.n, support)
    return DecodeOutcome(
        codeword=z ^ tep,
        tep=tep,
        soft_weight=soft_weight(tep, r),
        guesses=guesses,
        termination=termination,
        ml_certified=certified,
        operations=operations,
    )


def _systematic_syndrome(p_columns, perm, m: int, z: BitVector) -> tuple[int, int]:
    """[I | P] applied to z in systematic column order, packed as an int, with its XOR count."""
    z_sys = z.bits[perm]
    s = _pack(z_sys[:m])
    right = np.flatnonzero(z_sys[m:])
    for j in right:
        s ^= p_columns[j]
    return s, len(right)


def _guess_codewords(p_columns, perm, m: int, rel_sys, s: int, max_guesses: Optional[int]):
    """
    Core GCD loop over the right-part reliabilities rel_sys[m:].
    Returns (original support of e_opt, guesses, termination, column XORs).
    """
    rel_left = rel_sys[:m]
    rel_right = rel_sys[m:]

    best_left, best_right = s, ()
    gamma_opt = support_weight(rel_left, _bits(s))
    guesses = 1
    operations = 0

    sorter = TepSorter(rel_right)
    sorter.next_support()  # e_R = 0 was re-encoded above

    while True:
        item = sorter.next_support()
        if item is None:
            termination = Termination.EXHAUSTED
            break
        gamma_right, right = item
        if gamma_right >= gamma_opt:
            termination = Termination.EARLY_STOP
            break
        if max_guesses is not None and guesses >= max_guesses:
            termination = Termination.CAP_HIT
            break

        e_left = s
        for j in right:
            e_left ^= p_columns[j]
        guesses += 1
        operations += len(right)

        weights = [rel_left[i] for i in _bits(e_left)] + [rel_right[j] for j in right]
        gamma = math.fsum(weights)
        if gamma < gamma_opt:
            best_left, best_right, gamma_opt = e_left, right, gamma

    support = [int(perm[i]) for i in _bits(best_left)] + [int(perm[m + j]) for j in best_right]
    return support, guesses, termination, operations


def decode_gnd(code: LinearCode, r: LlrVector, config: DecoderConfig = DecoderConfig(DecoderKind.GND)) -> DecodeOutcome:
    """Check full-length TEPs lightest first until one matches the syndrome."""
    _check_length(code, r)
    z = hard_decision(r)
    columns = code.parity_columns
    target = 0
    operations = 0
    for p in z.support():
        target ^= columns[p]
        operations += 1
    sorter = TepSorter(r.reliabilities)
    cap = config.max_guesses

    guesses = 0
    while cap is None or guesses < cap:
        item = sorter.next_support()
        if item is None:
            break
        _, support = item
        guesses += 1
        operations += len(support)
        s = 0
        for p in support:
            s ^= columns[p]
        if s == target:
            return _outcome(code, r, z, support, guesses, Termination.EARLY_STOP, True, operations)

    # Cap reached: e_L = s with e_R = 0 is always valid.
    logging.warning(f"GND hit its cap of {cap} guesses on {code.name}; returning the re-encoded hard decision")
    sp = code.systematic
    s, syndrome_ops = _systematic_syndrome(code.p_columns, sp.column_perm, sp.redundancy, z)
    support = [int(sp.column_perm[i]) for i in _bits(s)]
    return _outcome(code, r, z, support, guesses, Termination.CAP_HIT, False, operations + syndrome_ops)


def decode_gcd(code: LinearCode, r: LlrVector, config: DecoderConfig = DecoderConfig(DecoderKind.GCD)) -> DecodeOutcome:
    """Guess information-part TEPs over the code's cached systematic form and re-encode each."""
    _check_length(code, r)
    z = hard_decision(r)
    sp = code.systematic
    perm = sp.column_perm
    s, syndrome_ops = _systematic_syndrome(code.p_columns, perm, sp.redundancy, z)
    rel_sys = r.reliabilities[perm].tolist()
    support, guesses, termination, operations = _guess_codewords(
        code.p_columns, perm, sp.redundancy, rel_sys, s, config.max_guesses
    )
    return _outcome(
        code, r, z, support, guesses, termination, termination != Termination.CAP_HIT, syndrome_ops + operations
    )


def decode_osd_gcd(code: LinearCode, r: LlrVector, config: DecoderConfig = DecoderConfig(DecoderKind.OSD_GCD)) -> DecodeOutcome:
    """
    GCD over the most reliable basis. Columns are laid out least reliable first
    and eliminated per reception, so the greedy pivots take the least reliable
    independent positions and the right part is the MRB.
    """
    _check_length(code, r)
    z = hard_decision(r)
    order = np.argsort(r.reliabilities, kind="stable")
    sp = systematize(code.parity.permute_columns(order))
    perm = order[sp.column_perm]
    p_columns = sp.p.column_ints()
    s, syndrome_ops = _systematic_syndrome(p_columns, perm, sp.redundancy, z)
    rel_sys = r.reliabilities[perm].tolist()
    support, guesses, termination, operations = _guess_codewords(
        p_columns, perm, sp.redundancy, rel_sys, s, config.max_guesses
    )
    return _outcome(
        code, r, z, support, guesses, termination, termination != Termination.CAP_HIT, syndrome_ops + operations
    )


def decode_oracle(code: LinearCode, r: LlrVector) -> DecodeOutcome:
    """Exhaustive search over all 2^K codewords for the (soft weight, lex)-minimal TEP."""
    _check_length(code, r)
    if code.k > ORACLE_MAX_K:
        raise ValueError(f"Oracle enumerates 2^K codewords; K={code.k} exceeds {ORACLE_MAX_K}")
    z = hard_decision(r)
    rel = r.reliabilities
    g = code.generator.entries.astype(np.int64)
    tol = 1e-9 * max(1.0, float(rel.sum()))

    best_approx = np.inf
    candidates = []
    total = 1 << code.k
    for start in range(0, total, ORACLE_CHUNK):
        idx = np.arange(start, min(total, start + ORACLE_CHUNK), dtype=np.int64)
        info = (idx[:, None] >> np.arange(code.k)) & 1
        teps = ((info @ g) & 1).astype(np.uint8) ^ z.bits
        approx = teps @ rel
        chunk_min = float(approx.min())
        if chunk_min > best_approx + tol:
            continue
        best_approx = min(best_approx, chunk_min)
        keep = np.flatnonzero(approx <= best_approx + tol)
        candidates = [c for c in candidates if c[0] <= best_approx + tol]
        candidates += [(float(approx[i]), teps[i].copy()) for i in keep]

    exact = [(support_weight(rel, np.flatnonzero(e)), tuple(int(b) for b in e)) for _, e in candidates]
    gamma_min = min(w for w, _ in exact)
    tied = sorted(e for w, e in exact if w == gamma_min)
    tep = BitVector(np.array(tied[0], dtype=np.uint8))
    return DecodeOutcome(
        codeword=z ^ tep,
        tep=tep,
        soft_weight=gamma_min,
        guesses=total,
        termination=Termination.EXHAUSTED,
        ml_certified=True,
        operations=total * code.k,
        ties=len(tied),
    )


def decode(code: LinearCode, r: LlrVector, config: DecoderConfig) -> DecodeOutcome:
    kind = DecoderKind(config.decoder_kind)
    if kind is DecoderKind.GND:
        return decode_gnd(code, r, config)
    if kind is DecoderKind.GCD:
        return decode_gcd(code, r, config)
    if kind is DecoderKind.OSD_GCD:
        return decode_osd_gcd(code, r, config)
    return decode_oracle(code, r)


def split_tep(code: LinearCode, e: BitVector) -> tuple[BitVector, BitVector]:
    """(e_L, e_R) in the code's systematic column order."""
    e_sys = e.permuted(code.systematic.column_perm)
    m = code.systematic.redundancy
    return BitVector(e_sys.bits[:m]), BitVector(e_sys.bits[m:])
