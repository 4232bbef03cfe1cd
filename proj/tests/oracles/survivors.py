#!/usr/bin/env python3
"""Independent oracle for the survivor scan: partitions of n+2 with a part
above 1 and Fermat-test ratio >= 1, for 1 <= n <= 25 and 3 <= d <= 17.

Usage: survivors.py > ../golden/survivors_n1-25_d3-17.tsv
"""
from fractions import Fraction
from math import factorial
import sys

JC_TABLE = {1: 1, 2: 60, 3: 360, 4: 25920, 5: 25920, 6: 6531840, 7: 1451520,
            8: 348364800, 9: 4199040, 12: 448345497600}


def jc(r):
    return JC_TABLE.get(r, factorial(r + 1))


def partitions(v):
    # ascending-part generator, reversed at the end
    a = [0] * (v + 1)
    k = 1
    a[1] = v
    while k != 0:
        x = a[k - 1] + 1
        y = a[k] - 1
        k -= 1
        while x <= y:
            a[k] = x
            y -= x
            k += 1
        a[k] = x + y
        yield a[:k + 1]


def ratio(parts, d):
    s = len(parts)
    v = sum(parts)
    num = d ** s
    for p in parts:
        num *= jc(p)
    for p in set(parts):
        num *= factorial(parts.count(p))
    return Fraction(num, d ** v * factorial(v))


def exp_type(parts):
    return " ".join(f"{p}^{parts.count(p)}" for p in sorted(set(parts), reverse=True))


def main():
    out = sys.stdout
    out.write("n\td\tsequence\tratio_num\tratio_den\n")
    for n in range(1, 26):
        seqs = [sorted(p, reverse=True) for p in partitions(n + 2) if p and max(p) > 1]
        seqs.sort(reverse=True)
        for d in range(3, 18):
            for l in seqs:
                R = ratio(l, d)
                if R >= 1:
                    out.write(f"{n}\t{d}\t{exp_type(l)}\t{R.numerator}\t{R.denominator}\n")


if __name__ == "__main__":
    main()
