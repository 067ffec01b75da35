"""Certify each published pair and print its exception window.

    python scripts/exception_windows.py
"""

from exception_curves import certify_exception, validate_pair
from exception_curves.certification import KNOWN_EXCEPTION_PAIRS


def main():
    for s, t in KNOWN_EXCEPTION_PAIRS:
        cert = certify_exception(validate_pair(s, t))
        p = cert.point
        lo, hi = cert.window
        print(f"s={s} t={t}")
        print(f"  beta=({p.beta1:.12f}, {p.beta2:.12f}) d={cert.d:.9f} p_M={cert.p_M:.9f}")
        print(f"  window=[{lo:.9f}, {hi:.9f}] witness p={cert.witness_p:.9f} "
              f"SD={cert.sd:.9f} SDhat={cert.sd_hat:.9f}")


if __name__ == "__main__":
    main()
