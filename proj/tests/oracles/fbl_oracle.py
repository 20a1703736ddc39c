"""High-precision reference values for the finite-blocklength and frame planning tests.

Run with `python3 tests/oracles/fbl_oracle.py`; the printed values are frozen in
tests/unit/test_fbl.cpp and tests/unit/test_frame.cpp. Everything here is computed with
mpmath at 50 digits and min_blocklength by a plain linear scan, independent of the C++ code.
"""

import mpmath as mp

mp.mp.dps = 50


def qinv(eps):
    return mp.sqrt(2) * mp.erfinv(1 - 2 * mp.mpf(eps))


def capacity(snr):
    return mp.log(1 + snr, 2)


def dispersion(snr):
    return snr * (snr + 2) / (snr + 1) ** 2 * mp.log(mp.e, 2) ** 2


def rate(n, eps, snr):
    n = mp.mpf(n)
    r = capacity(snr) - mp.sqrt(dispersion(snr) / n) * qinv(eps) + mp.log(n, 2) / (2 * n)
    return max(r, mp.mpf(0))


def bits(n, eps, snr):
    n = mp.mpf(n)
    return n * capacity(snr) - mp.sqrt(n * dispersion(snr)) * qinv(eps) + mp.log(n, 2) / 2


def min_blocklength(k, eps, snr):
    n = 1
    while bits(n, eps, snr) < k:
        n += 1
    return n


def error_prob(n, k, snr):
    n = mp.mpf(n)
    margin = capacity(snr) - mp.mpf(k) / n + mp.log(n, 2) / (2 * n)
    return mp.ncdf(-margin * mp.sqrt(n / dispersion(snr)))


def ceil_log2(x):
    return 0 if x <= 1 else (x - 1).bit_length()


def plan(groups, b, eps, snr, header=True):
    eps_h = mp.mpf(eps) / 2 if header else mp.mpf(0)
    payload = sum(min_blocklength(b * len(g), eps - eps_h, snr) for g in groups)
    if not header:
        return payload, 0
    total = payload
    for _ in range(10):
        width = max(1, ceil_log2(total))
        h = min_blocklength(width * len(groups), eps_h, snr)
        total = h + payload
        if max(1, ceil_log2(total)) == width:
            return total, h
    raise RuntimeError("no fixed point")


def main():
    for eps in ["0.5", "0.1", "1e-3", "1e-5", "1e-9"]:
        print(f"qinv({eps}) = {mp.nstr(qinv(mp.mpf(eps)), 20)}")
    for n, eps, snr in [(100, "1e-5", 1), (1000, "1e-3", 10), (256, "1e-9", "0.5"), (10**7, "1e-5", 1)]:
        print(f"rate({n}, {eps}, {snr}) = {mp.nstr(rate(n, mp.mpf(eps), mp.mpf(snr)), 20)}")
    for k, eps, snr in [(256, "1e-5", 1), (32, "1e-9", 10), (1000, "1e-3", "0.1")]:
        print(f"min_blocklength({k}, {eps}, {snr}) = {min_blocklength(k, mp.mpf(eps), mp.mpf(snr))}")
    for n, k, snr in [(300, 256, 1), (500, 256, 1), (80, 32, 10)]:
        print(f"error_prob({n}, {k}, {snr}) = {mp.nstr(error_prob(n, k, mp.mpf(snr)), 20)}")
    snr = mp.mpf(1)
    eps = mp.mpf("1e-5")
    sep = plan([[0], [1], [2], [3]], 256, eps, snr)
    joint = plan([[0, 1, 2, 3]], 256, eps, snr, header=False)
    pairs = plan([[0, 1], [2, 3]], 256, eps, snr)
    print(f"frame 4x256 separate total/header = {sep}")
    print(f"frame 4x256 joint total = {joint[0]}")
    print(f"frame 4x256 pairs total/header = {pairs}")


if __name__ == "__main__":
    main()
