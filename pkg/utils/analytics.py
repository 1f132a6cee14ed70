import math

from scipy.special import comb
from scipy.stats import norm

'''Closed-form guess counts, FER predictions and the confidence intervals used to compare against them.'''

Z95 = float(norm.ppf(0.975))


def binomial_ci95(errors: int, frames: int) -> float:
    """Normal-approximation 95% half-width of errors/frames."""
    if frames <= 0:
        return 0.0
    fer = errors / frames
    return Z95 * math.sqrt(fer * (1.0 - fer) / frames)


def hamming_guess_expectations(p: float) -> dict:
    """
    [7,4] Hamming code on a BSC(p).
    p0: the error pattern is a codeword; p1: probability of each nonzero syndrome.
    """
    p0 = (1 - p) ** 7 + 7 * p ** 3 * (1 - p) ** 3 + p ** 7
    p1 = (1 - p0) / 7
    gnd, gcd = p0 + 35 * p1, p0 + 17 * p1
    # GND takes 1 + s guesses on the syndrome of rank s = 1..7. GCD takes 1 on the
    # three syndromes of a single left error and 2..5 on the other four.
    gnd_square = p0 + 203 * p1
    gcd_square = p0 + 57 * p1
    return {
        "p0": p0,
        "p1": p1,
        "gnd": gnd,
        "gcd": gcd,
        "gnd_std": math.sqrt(max(0.0, gnd_square - gnd ** 2)),
        "gcd_std": math.sqrt(max(0.0, gcd_square - gcd ** 2)),
    }


def lex_rank_same_weight(bits) -> int:
    """
    1-based rank of a pattern among all patterns of the same length and Hamming
    weight, 0 before 1 at the first differing index.
    """
    bits = [int(b) for b in bits]
    n = len(bits)
    ones_left = sum(bits)
    rank = 0
    for i, b in enumerate(bits):
        if b:
            # Same prefix with a 0 here comes first.
            rank += int(comb(n - i - 1, ones_left, exact=True))
            ones_left -= 1
    return rank + 1


def _below(length: int, weight: int) -> int:
    return sum(int(comb(length, i, exact=True)) for i in range(weight))


def gcd_bsc_guess_count(k: int, e_left, e_right) -> int:
    """GCD re-encodings on a BSC with a unique lightest TEP (e_left, e_right) in systematic order."""
    e_left = [int(b) for b in e_left]
    e_right = [int(b) for b in e_right]
    weight = sum(e_left) + sum(e_right)
    if sum(e_left) > 0:
        return min(2 ** k, _below(k, weight))
    return _below(k, weight) + lex_rank_same_weight(e_right)


def gnd_bsc_guess_count(e) -> int:
    """GND syndrome checks on a BSC with a unique lightest TEP e (original order)."""
    e = [int(b) for b in e]
    return _below(len(e), sum(e)) + lex_rank_same_weight(e)


def repetition3_fer(p: float) -> float:
    """ML frame error rate of the [3,1] repetition code on a BSC(p)."""
    return 3 * p ** 2 * (1 - p) + p ** 3
