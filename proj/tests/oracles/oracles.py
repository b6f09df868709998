"""Independent high-precision reference values frozen into the C++ tests.

Run with: python3 tests/oracles/oracles.py
"""
import mpmath as mp

mp.mp.dps = 40


def default_model(semi_angle_deg=60, L=2.5, R=3.0):
    m = -mp.log(2) / mp.log(mp.cos(mp.radians(semi_angle_deg)))
    area, resp, ts, zeta, fov = mp.mpf("1e-4"), mp.mpf("0.4"), 1, mp.mpf("1.5"), mp.pi / 2
    g = zeta**2 / mp.sin(fov) ** 2
    X = area * (m + 1) * resp / (2 * mp.pi) * ts * g * mp.mpf(L) ** (m + 1)
    mu = (mp.mpf("0.03") * mp.mpf("0.8")) ** 2 / (mp.mpf("1e-21") * mp.mpf("2e5"))
    smin = mu * X**2 / (mp.mpf(R) ** 2 + mp.mpf(L) ** 2) ** (m + 3)
    smax = mu * X**2 / mp.mpf(L) ** (2 * (m + 3))
    return dict(m=m, X=X, mu=mu, smin=smin, smax=smax, R=mp.mpf(R), L=mp.mpf(L))


def pdf(M, x):
    m = M["m"]
    C = (M["mu"] * M["X"] ** 2) ** (1 / (m + 3)) / (M["R"] ** 2 * (m + 3))
    return C * x ** (-(m + 4) / (m + 3))


def cf_gamma(M, t):
    """CF via upper incomplete gamma, including the (-jt)^(1/(m+3)) factor."""
    m = M["m"]
    C = (M["mu"] * M["X"] ** 2) ** (1 / (m + 3)) / (M["R"] ** 2 * (m + 3))
    s = -1 / (m + 3)
    z = -1j * mp.mpf(t)
    return C * z ** (-s) * (mp.gammainc(s, z * M["smin"]) - mp.gammainc(s, z * M["smax"]))


def cf_quad(M, t):
    f = lambda x: pdf(M, x) * mp.expj(t * x)
    pts = mp.linspace(M["smin"], M["smax"], 200)
    return mp.quad(f, pts)


if __name__ == "__main__":
    print("m(30deg) =", -mp.log(2) / mp.log(mp.cos(mp.radians(30))))
    M = default_model()
    h0 = M["X"] / M["L"] ** (M["m"] + 3)
    hR = M["X"] / (M["R"] ** 2 + M["L"] ** 2) ** ((M["m"] + 3) / 2)
    print("X =", M["X"], "h(0) =", h0, "h(R) =", hR)
    print("mu =", M["mu"], "gamma(h0) =", M["mu"] * h0**2, "gamma(4.584e-6) =", M["mu"] * mp.mpf("4.584e-6") ** 2)
    print("snr range", M["smin"], M["smax"])
    for t in [mp.mpf("1e-2") / M["smin"], mp.mpf("0.5"), mp.mpf("3.7")]:
        a, b = cf_gamma(M, t), cf_quad(M, t)
        print("t=%s gamma-form=%s quad=%s rel=%s" % (mp.nstr(t, 17), mp.nstr(a, 17), mp.nstr(b, 17), mp.nstr(abs(a - b) / abs(b), 3)))
    print("0.99^100 =", mp.mpf("0.99") ** 100)
    # single-user CDF at 3 dB
    g = mp.mpf(10) ** mp.mpf("0.3")
    m = M["m"]
    F = ((M["R"] ** 2 + M["L"] ** 2) - (M["mu"] * M["X"] ** 2 / g) ** (1 / (m + 3))) / M["R"] ** 2
    print("F_snr(3dB) =", F)
    # mean of snr
    mean = mp.quad(lambda x: x * pdf(M, x), [M["smin"], M["smax"]])
    print("mean snr =", mean)

    # xoshiro256** seeded by splitmix64, plus the 2^128 jump
    MASK = (1 << 64) - 1

    def splitmix_state(seed):
        s = []
        for _ in range(4):
            seed = (seed + 0x9E3779B97F4A7C15) & MASK
            z = seed
            z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
            z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
            s.append(z ^ (z >> 31))
        return s

    def rotl(x, k):
        return ((x << k) | (x >> (64 - k))) & MASK

    def step(s):
        r = (rotl((s[1] * 5) & MASK, 7) * 9) & MASK
        t = (s[1] << 17) & MASK
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = rotl(s[3], 45)
        return r

    def jump(s):
        acc = [0, 0, 0, 0]
        for word in (0x180EC6D33CFD0ABA, 0xD5A61266F0C9392C, 0xA9582618E03FC9AA, 0x39ABDC4529B1661C):
            for b in range(64):
                if word >> b & 1:
                    acc = [a ^ x for a, x in zip(acc, s)]
                step(s)
        s[:] = acc

    s = splitmix_state(42)
    print("xoshiro(42) first =", [hex(step(s)) for _ in range(3)])
    s = splitmix_state(42)
    jump(s)
    print("xoshiro(42) after jump =", [hex(step(s)) for _ in range(2)])
