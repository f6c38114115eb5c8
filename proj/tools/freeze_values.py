# Copyright 2026 The ecpsim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Exact rational reference values frozen into the C++ tests.

Works on squared magnitudes only and chains the round recursion directly,
so it shares no code path with the C++ closed forms.
"""

from fractions import Fraction as F


def step1_success(a, b, g):
    return a * (g + 2 * b) / (a + b)


def step2_success(b, g):
    return 3 * b * g / ((g + b) * (g + 2 * b))


def step1_rounds(a, b, g, n):
    out, chain = [], F(1)
    for _ in range(n):
        p = step1_success(a, b, g)
        out.append(chain * p)
        chain *= 1 - p
        s = a * a + b * b + b * g
        a, b, g = a * a / s, b * b / s, b * g / s
    return out


def step2_rounds(b, g, m):
    out, chain = [], F(1)
    for _ in range(m):
        p = step2_success(b, g)
        out.append(chain * p)
        chain *= 1 - p
        s = 2 * b * b + g * g
        b, g = b * b / s, g * g / s
    return out


def show(name, values):
    print(name, ", ".join(f"{float(v):.17g}" for v in values))


if __name__ == "__main__":
    for a, b in [(F(1, 2), F(1, 3)), (F(1, 5), F(3, 10)), (F(1, 3), F(1, 3))]:
        g = 1 - a - b
        print(f"# a={a} b={b} g={g}")
        show("step1", step1_rounds(a, b, g, 6))
        show("step2", step2_rounds(b, g, 6))
        s1, s2 = sum(step1_rounds(a, b, g, 3)), sum(step2_rounds(b, g, 3))
        print("total_n3m3", f"{float(s1 * s2):.17g}", s1 * s2)
    b = F(1, 3)
    for a in [F(1, 10), F(1, 3), F(1, 2)]:
        g = 1 - a - b
        ecp1 = step1_success(a, b, g) * step2_success(b, g)
        ecp2 = sum(step1_rounds(a, b, g, 3)) * sum(step2_rounds(b, g, 3))
        print(f"sweep a={a}", f"{float(ecp1):.17g}", f"{float(ecp2):.17g}")
