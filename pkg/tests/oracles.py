"""Independent re-derivations used as test oracles.

These deliberately avoid the package code paths: high-precision mpmath for
the propagation formulas and plain loops over Fractions for the scorers.
"""

from fractions import Fraction

from mpmath import log10, mp, mpf

mp.dps = 40


def hata_correction(f, hm):
    f, hm = mpf(f), mpf(hm)
    return (mpf("1.1") * log10(f) - mpf("0.7")) * hm - (mpf("1.56") * log10(f) - mpf("0.8"))


def macro_loss(f, hb, hm, d_km):
    f, hb, d = mpf(f), mpf(hb), mpf(d_km)
    return (
        mpf("69.55") + mpf("26.16") * log10(f) - mpf("13.82") * log10(hb)
        - hata_correction(f, hm) + (mpf("44.9") - mpf("6.55") * log10(hb)) * log10(d)
    )


def micro_loss(f, hb, d_km):
    f, hb, d = mpf(f), mpf(hb), mpf(d_km)
    return (
        mpf("135.41") + mpf("12.49") * log10(f) - mpf("4.99") * log10(hb)
        + (mpf("46.84") - mpf("2.34") * log10(hb)) * log10(d)
    )


def saw(mask, weights, values):
    w = [Fraction(x) for x in weights]
    r = [Fraction(x) for x in values]
    num = Fraction(0)
    for a, b in zip(w, r):
        num += a * b
    return float(mask * num / sum(w))


def wp(mask, weights, values):
    out = mpf(1)
    for a, b in zip(weights, values):
        out *= mpf(b) ** mpf(a)
    return float(mask * out)


def sf(ws, wp_, wc, fs, fp, fc):
    return float(Fraction(ws) * Fraction(fs) + Fraction(wp_) * Fraction(fp) + Fraction(wc) * Fraction(fc))


def proposed(values, scaling, lp):
    num = Fraction(0)
    for m, s in scaling.items():
        num += Fraction(values[m]) * Fraction(s)
    return float(mpf(num.numerator) / mpf(num.denominator) / log10(1 + mpf(lp)))


def cac_expected(attached, battery_cmp, distance_cmp, wlan):
    """Expected next attachment from a hand-written transition table.

    ``battery_cmp`` / ``distance_cmp`` are -1, 0, +1 for below, equal, above
    threshold.
    """
    if not wlan:
        return "UMTS"
    if attached == "WLAN":
        return "UMTS" if (battery_cmp == -1 and distance_cmp == -1) else "WLAN"
    return "WLAN" if (distance_cmp == 1 or battery_cmp == 1) else "UMTS"
