#!/usr/bin/env python3
"""Streams decimal digits of pi with Gibbons' unbounded spigot.

Writes the known-digits fixture consumed by the test suite:
    python3 tools/pi_spigot.py 1050 > tests/data/pi_digits.txt
"""
import sys


def pi_digits():
    q, r, t, k, n, l = 1, 0, 1, 1, 3, 3
    while True:
        if 4 * q + r - t < n * t:
            yield n
            q, r, n = 10 * q, 10 * (r - n * t), (10 * (3 * q + r)) // t - 10 * n
        else:
            q, r, t, k, n, l = (q * k, (2 * q + r) * l, t * l, k + 1,
                                (q * (7 * k + 2) + r * l) // (t * l), l + 2)


def main():
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 1050
    gen = pi_digits()
    digits = [str(next(gen)) for _ in range(count)]
    print(digits[0] + "." + "".join(digits[1:]))


if __name__ == "__main__":
    main()
