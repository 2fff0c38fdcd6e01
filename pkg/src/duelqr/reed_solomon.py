"""GF(256) arithmetic and Reed-Solomon coding as used by QR symbols.

Field polynomial 0x11D, generator element 2, generator polynomial roots
alpha^0 .. alpha^(n-1).  Codeword sequences are written highest degree first,
the order in which they appear in a QR bit stream.
"""

from functools import lru_cache

import numpy as np

from .errors import TooManyErrors

PRIMITIVE = 0x11D

EXP = [0] * 512
LOG = [0] * 256
_x = 1
for _i in range(255):
    EXP[_i] = _x
    LOG[_x] = _i
    _x <<= 1
    if _x & 0x100:
        _x ^= PRIMITIVE
for _i in range(255, 512):
    EXP[_i] = EXP[_i - 255]
del _x, _i

_LOG_NP = np.array(LOG, dtype=np.int64)
_EXP_NP = np.array(EXP, dtype=np.int64)


def gf_mul(a, b):
    if a == 0 or b == 0:
        return 0
    return EXP[LOG[a] + LOG[b]]


def gf_div(a, b):
    if b == 0:
        raise ZeroDivisionError("division by zero in GF(256)")
    if a == 0:
        return 0
    return EXP[(LOG[a] - LOG[b]) % 255]


def gf_inv(a):
    if a == 0:
        raise ZeroDivisionError("zero has no inverse in GF(256)")
    return EXP[255 - LOG[a]]


def gf_pow(a, n):
    if a == 0:
        return 0 if n else 1
    return EXP[(LOG[a] * n) % 255]


# Polynomials below are lists of coefficients, lowest degree first, unless
# the name says otherwise.

def poly_mul(p, q):
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] ^= gf_mul(a, b)
    return out


def poly_eval(p, x):
    """Evaluate an ascending-order polynomial at x (Horner)."""
    acc = 0
    for c in reversed(p):
        acc = gf_mul(acc, x) ^ c
    return acc


@lru_cache(maxsize=None)
def generator_poly(ec_len):
    """Degree-ec_len generator, highest degree first, leading coefficient 1."""
    g = [1]
    for i in range(ec_len):
        # (x - alpha^i) == (x + alpha^i); ascending [alpha^i, 1]
        g = poly_mul(g, [EXP[i], 1])
    return tuple(reversed(g))


def rs_encode(data, ec_len):
    """Parity codewords: remainder of data(x) * x^ec_len mod g(x)."""
    gen = generator_poly(ec_len)
    rem = [0] * ec_len
    for byte in data:
        factor = byte ^ rem[0]
        rem = rem[1:] + [0]
        if factor:
            lf = LOG[factor]
            for i in range(ec_len):
                c = gen[i + 1]
                if c:
                    rem[i] ^= EXP[lf + LOG[c]]
    return rem


@lru_cache(maxsize=None)
def _syndrome_powers(n, ec_len):
    # log(alpha^(j * (n-1-p))) for syndrome j and codeword position p
    j = np.arange(ec_len)[:, None]
    deg = (n - 1 - np.arange(n))[None, :]
    return (j * deg) % 255


def syndromes(block, ec_len):
    """S_j = r(alpha^j) for j in 0..ec_len-1."""
    r = np.asarray(block, dtype=np.int64)
    nz = r != 0
    if not nz.any():
        return [0] * ec_len
    powers = _syndrome_powers(len(r), ec_len)[:, nz]
    terms = _EXP_NP[(powers + _LOG_NP[r[nz]][None, :]) % 255]
    return np.bitwise_xor.reduce(terms, axis=1).tolist()


def berlekamp_massey(synd):
    """Shortest LFSR (error locator, ascending, Lambda_0 = 1) for the syndromes."""
    locator = [1]
    prev = [1]
    length = 0
    shift = 1
    prev_disc = 1
    for k, s in enumerate(synd):
        disc = s
        for i in range(1, length + 1):
            if i < len(locator):
                disc ^= gf_mul(locator[i], synd[k - i])
        if disc == 0:
            shift += 1
            continue
        coef = gf_div(disc, prev_disc)
        update = [0] * shift + [gf_mul(coef, c) for c in prev]
        new = locator + [0] * max(0, len(update) - len(locator))
        for i, c in enumerate(update):
            new[i] ^= c
        if 2 * length <= k:
            prev = locator
            length = k + 1 - length
            prev_disc = disc
            shift = 1
        else:
            shift += 1
        locator = new
    while len(locator) > 1 and locator[-1] == 0:
        locator.pop()
    return locator, length


def chien_search(locator, n):
    """Codeword positions p (0 = first/highest degree) where Lambda(X_p^-1) = 0."""
    positions = []
    for p in range(n):
        power = n - 1 - p
        if poly_eval(locator, EXP[(255 - power) % 255]) == 0:
            positions.append(p)
    return positions


def forney(synd, locator, positions, n):
    """Error magnitudes for first consecutive root alpha^0."""
    ec_len = len(synd)
    omega = poly_mul(list(synd), locator)[:ec_len]
    deriv = [locator[i] if i % 2 == 1 else 0 for i in range(1, len(locator))]
    magnitudes = []
    for p in positions:
        x = EXP[n - 1 - p]
        x_inv = gf_inv(x)
        denom = poly_eval(deriv, x_inv)
        if denom == 0:
            raise TooManyErrors("error locator has a repeated root")
        magnitudes.append(gf_mul(x, gf_div(poly_eval(omega, x_inv), denom)))
    return magnitudes


def rs_decode(block, ec_len, return_count=False):
    """Correct up to ec_len // 2 codeword errors and return the data part.

    The corrected block is re-encoded and compared against itself as a guard
    against miscorrection; any inconsistency raises TooManyErrors.
    """
    block = [int(b) for b in block]
    n = len(block)
    if n <= ec_len:
        raise ValueError(f"block of {n} codewords cannot carry {ec_len} parity codewords")
    synd = syndromes(block, ec_len)
    if not any(synd):
        data = block[: n - ec_len]
        return (data, 0) if return_count else data

    locator, length = berlekamp_massey(synd)
    degree = len(locator) - 1
    if degree != length or degree > ec_len // 2:
        raise TooManyErrors(f"error locator degree {degree} exceeds capacity {ec_len // 2}")
    positions = chien_search(locator, n)
    if len(positions) != degree:
        raise TooManyErrors(f"locator of degree {degree} has {len(positions)} roots in range")
    for p, e in zip(positions, forney(synd, locator, positions, n)):
        block[p] ^= e

    data = block[: n - ec_len]
    if any(syndromes(block, ec_len)) or rs_encode(data, ec_len) != block[n - ec_len:]:
        raise TooManyErrors("residual syndrome after correction")
    return (data, degree) if return_count else data
