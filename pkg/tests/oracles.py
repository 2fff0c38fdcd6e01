"""Independent reference computations used to freeze expected values.

Nothing here imports from duelqr; each routine is the slow, obvious version of
something the package does quickly.
"""

import math


# ---- GF(256) by carry-less multiplication ----

def gf_mul_slow(a, b, poly=0x11D):
    out = 0
    while b:
        if b & 1:
            out ^= a
        a <<= 1
        if a & 0x100:
            a ^= poly
        b >>= 1
    return out


def gf_pow_slow(a, n):
    out = 1
    for _ in range(n):
        out = gf_mul_slow(out, a)
    return out


def generator_slow(ec_len):
    """Generator polynomial, highest degree first, by repeated multiplication."""
    g = [1]
    for i in range(ec_len):
        root = gf_pow_slow(2, i)
        nxt = [0] * (len(g) + 1)
        for j, c in enumerate(g):
            nxt[j] ^= c                       # c * x
            nxt[j + 1] ^= gf_mul_slow(c, root)  # c * root
        g = nxt
    return g


def rs_parity_slow(data, ec_len):
    """Long division of data(x) * x^ec_len by the generator; returns the remainder."""
    g = generator_slow(ec_len)
    work = list(data) + [0] * ec_len
    for i in range(len(data)):
        coef = work[i]
        if coef:
            for j, gc in enumerate(g):
                work[i + j] ^= gf_mul_slow(gc, coef)
    return work[len(data):]


# ---- BCH over GF(2) with explicit bit lists ----

def gf2_remainder(dividend_bits, divisor_bits):
    work = list(dividend_bits)
    for i in range(len(work) - len(divisor_bits) + 1):
        if work[i]:
            for j, d in enumerate(divisor_bits):
                work[i + j] ^= d
    return work[-(len(divisor_bits) - 1):]


def bits_of(value, width):
    return [(value >> i) & 1 for i in reversed(range(width))]


def format_word_slow(ec_bits, mask):
    data = bits_of(ec_bits, 2) + bits_of(mask, 3)
    rem = gf2_remainder(data + [0] * 10, bits_of(0b10100110111, 11))
    word = int("".join(map(str, data + rem)), 2)
    return word ^ 0b101010000010010


# ---- symbol geometry by explicit rules ----

ALIGN = {1: [], 2: [6, 18], 3: [6, 22], 4: [6, 26], 5: [6, 30], 6: [6, 34],
         7: [6, 22, 38], 8: [6, 24, 42], 9: [6, 26, 46], 10: [6, 28, 50]}


def is_function_slow(row, col, version):
    size = 17 + 4 * version
    # finder + separator squares
    if row <= 7 and col <= 7:
        return True
    if row <= 7 and col >= size - 8:
        return True
    if row >= size - 8 and col <= 7:
        return True
    # format strips and dark module
    if row == 8 and (col <= 8 or col >= size - 8):
        return True
    if col == 8 and (row <= 8 or row >= size - 8):
        return True
    if row == 6 or col == 6:
        return True
    if version >= 7:
        if row <= 5 and size - 11 <= col <= size - 9:
            return True
        if col <= 5 and size - 11 <= row <= size - 9:
            return True
    centers = ALIGN[version]
    for cy in centers:
        for cx in centers:
            corner = (cy == 6 and cx == 6) or (cy == 6 and cx == centers[-1]) or (cy == centers[-1] and cx == 6)
            if corner:
                continue
            if abs(row - cy) <= 2 and abs(col - cx) <= 2:
                return True
    return False


def zigzag_slow(version):
    """Data cells in placement order, walking column pairs with an explicit direction flag."""
    size = 17 + 4 * version
    order = []
    col = size - 1
    going_up = True
    while col > 0:
        if col == 6:
            col = 5
        rows = range(size - 1, -1, -1) if going_up else range(size)
        for r in rows:
            for c in (col, col - 1):
                if not is_function_slow(r, c, version):
                    order.append((r, c))
        going_up = not going_up
        col -= 2
    return order


# ---- ISO penalty, written over strings ----

def penalty_slow(grid):
    rows = ["".join("1" if v else "0" for v in row) for row in grid]
    cols = ["".join(r[i] for r in rows) for i in range(len(rows))]
    n = len(rows)
    score = 0
    for line in rows + cols:
        run_char, run_len = line[0], 1
        for ch in line[1:] + "x":
            if ch == run_char:
                run_len += 1
            else:
                if run_len >= 5:
                    score += 3 + (run_len - 5)
                run_char, run_len = ch, 1
    for r in range(n - 1):
        for c in range(n - 1):
            if rows[r][c] == rows[r][c + 1] == rows[r + 1][c] == rows[r + 1][c + 1]:
                score += 3
    for line in rows + cols:
        padded = "0000" + line + "0000"
        for i in range(len(padded) - 10):
            window = padded[i:i + 11]
            if window in ("10111010000", "00001011101"):
                score += 40
    dark = sum(r.count("1") for r in rows)
    percent = dark * 100 / (n * n)
    k = 0
    while not 45 - 5 * k <= percent <= 55 + 5 * k:
        k += 1
    return score + 10 * k


# ---- tilted-plane projection ----

def homography_displacement(u, theta_deg, distance):
    """Sampling displacement of module ``u`` (modules from centre) under an exact tilt.

    The code plane is rotated by theta about its central axis and viewed by a
    pinhole camera at ``distance`` modules with focal length ``distance``.  A
    reader that tracks module edges but steps half the centre-module pitch past
    each leading edge samples ``pitch0 / (2 pitch(u))`` modules into the module.
    """
    t = math.radians(theta_deg)
    c, s = math.cos(t), math.sin(t)
    # rotation about the vertical axis, then translation along the optical axis
    H = [[distance * c, 0.0, 0.0],
         [0.0, distance, 0.0],
         [s, 0.0, distance]]

    def image_x(x):
        X = H[0][0] * x + H[0][1] * 0 + H[0][2]
        W = H[2][0] * x + H[2][1] * 0 + H[2][2]
        return X / W

    pitch0 = image_x(0.5) - image_x(-0.5)
    pitch = image_x(u + 0.5) - image_x(u - 0.5)
    return pitch0 / (2 * pitch) - 0.5
