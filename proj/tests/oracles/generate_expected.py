# Copyright 2026 The hexwall Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent reference values for the unit tests.

Computes expected numbers from first-principles constructions (explicit
matrix products, rotated points, high-precision numeric derivatives,
shapely polygons) and writes tests/expected_values.hpp.

    python3 tests/oracles/generate_expected.py > tests/expected_values.hpp
"""

import math

import mpmath as mp
import numpy as np
from shapely.geometry import Point, Polygon

mp.mp.dps = 40
D = math.pi / 180.0

LEG = (0.18, 0.5, 0.5)
ARM = [  # (l_a, l_b, rest_deg)
    (0.30, 0.12, 60.0),
    (0.25, 0.10, 50.0),
    (0.20, 0.08, 70.0),
]
MODULE = dict(l_lo=0.12, l_ro=0.10, kol=100.0, mor=80.0)

out = []


def emit(name, value):
    if isinstance(value, (list, tuple, np.ndarray)):
        body = ", ".join(repr(float(v)) for v in value)
        out.append(f"inline constexpr double {name}[] = {{{body}}};")
    else:
        out.append(f"inline constexpr double {name} = {float(value)!r};")


def dh(a, alpha, d, theta):
    ct, st, ca, sa = math.cos(theta), math.sin(theta), math.cos(alpha), math.sin(alpha)
    return np.array([[ct, -st * ca, st * sa, a * ct],
                     [st, ct * ca, -ct * sa, a * st],
                     [0.0, sa, ca, d],
                     [0.0, 0.0, 0.0, 1.0]])


def leg_fk(q):
    a1, a2, a3 = LEG
    t = dh(a1, math.pi / 2, 0, q[0]) @ dh(a2, 0, 0, q[1]) @ dh(a3, 0, 0, q[2])
    return t[:3, 3]


# --- leg kinematics -------------------------------------------------------
LEG_Q = [(0.3, 0.4, -1.1), (-0.7, -0.2, -0.4), (0.1, 1.0, -2.5)]
for i, q in enumerate(LEG_Q):
    emit(f"kLegFk{i}", leg_fk(q))

# Finite-difference Jacobian of the matrix-product FK, high precision.
def leg_fk_mp(q):
    a1, a2, a3 = [mp.mpf(x) for x in LEG]
    r = a1 + a2 * mp.cos(q[1]) + a3 * mp.cos(q[1] + q[2])
    return [r * mp.cos(q[0]), r * mp.sin(q[0]), a2 * mp.sin(q[1]) + a3 * mp.sin(q[1] + q[2])]

q0 = [mp.mpf("0.3"), mp.mpf("0.4"), mp.mpf("-1.1")]
jac = []
for row in range(3):
    for col in range(3):
        jac.append(mp.diff(lambda x: leg_fk_mp([x if k == col else q0[k] for k in range(3)])[row], q0[col]))
emit("kLegJacobian0", [float(v) for v in jac])

# --- folding arm ------------------------------------------------------------
def fold_len(la, lb, rest, th):
    b = np.array([la, 0.0])
    c = lb * np.array([math.cos(rest + th), math.sin(rest + th)])
    return float(np.linalg.norm(b - c))


FOLD_THETA = [0.35, -0.2, 0.6]
for k, (la, lb, rest) in enumerate(ARM):
    th = FOLD_THETA[k]
    emit(f"kFoldExtension{k}", fold_len(la, lb, rest * D, th) - fold_len(la, lb, rest * D, 0.0))
    la_m, lb_m, rest_m = mp.mpf(la), mp.mpf(lb), mp.mpf(rest) * mp.pi / 180
    f = lambda x: mp.sqrt(la_m**2 + lb_m**2 - 2 * la_m * lb_m * mp.cos(rest_m + x))
    emit(f"kFoldLever{k}", float(mp.diff(f, mp.mpf(th))))

# planar arm chain, rest offsets (10, 60, -30) deg, directions (+1, -1, +1)
SEG = (0.45, 0.40, 0.15)
OFF = (10 * D, 60 * D, -30 * D)
DIRS = (1, -1, 1)
ARM_Q = (0.4, 0.9, 0.2)
ang = 0.0
tip = np.zeros(2)
for k in range(3):
    ang += OFF[k] + DIRS[k] * ARM_Q[k]
    tip += SEG[k] * np.array([math.cos(ang), math.sin(ang)])
emit("kArmTip", [tip[0], tip[1], ang])

# --- parallel module --------------------------------------------------------
def rot(v, a):
    return np.array([math.cos(a) * v[0] - math.sin(a) * v[1], math.sin(a) * v[0] + math.cos(a) * v[1]])


def angle_at(p, a, b):
    u, v = a - p, b - p
    return math.acos(np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v)))


def module_oracle(th):
    lo, ro = MODULE["l_lo"], MODULE["l_ro"]
    L = np.array([lo, 0.0])
    K = lo * np.array([math.cos(MODULE["kol"] * D), math.sin(MODULE["kol"] * D)])
    R = np.array([ro, 0.0])
    M = ro * np.array([math.cos(MODULE["mor"] * D), math.sin(MODULE["mor"] * D)])
    K1, M1 = rot(K, -th), rot(M, th)
    O = np.zeros(2)
    dl_p = np.linalg.norm(K - L) - np.linalg.norm(K1 - L)
    dl_a = np.linalg.norm(M - R) - np.linalg.norm(M1 - R)
    lever_p = math.sin(angle_at(L, K1, O)) * lo
    lever_a = math.sin(angle_at(R, M1, O)) * lo
    return dl_p, dl_a, lever_p, lever_a


for i, th in enumerate((0.3, -0.5)):
    emit(f"kModule{i}", module_oracle(th))

# --- support polygon ---------------------------------------------------------
feet = [(0.9, 0.1), (-0.3, 0.8), (-0.4, -0.7), (0.2, 0.05)]
poly = Polygon(feet).convex_hull
for i, c in enumerate([(0.1, 0.0), (0.85, 0.6)]):
    d = poly.exterior.distance(Point(c))
    emit(f"kMargin{i}", d if poly.contains(Point(c)) else -d)

# --- swing trajectory --------------------------------------------------------
# apex: 64 s^3 (1-s)^3 at s = 1/2 is 1; quintic smoothstep at s = 0.3
s = 0.3
emit("kSmoothstep03", 10 * s**3 - 15 * s**4 + 6 * s**5)
emit("kBump03", 64 * s**3 * (1 - s) ** 3)

print("// Copyright 2026 The hexwall Authors.")
print("//")
print("// Licensed under the Apache License, Version 2.0 (the \"License\");")
print("// you may not use this file except in compliance with the License.")
print("// You may obtain a copy of the License at")
print("//")
print("//     https://www.apache.org/licenses/LICENSE-2.0")
print("//")
print("// Unless required by applicable law or agreed to in writing, software")
print("// distributed under the License is distributed on an \"AS IS\" BASIS,")
print("// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.")
print("// See the License for the specific language governing permissions and")
print("// limitations under the License.")
print()
print("// Generated by tests/oracles/generate_expected.py. Do not edit.")
print()
print("#ifndef HEXWALL_TESTS_EXPECTED_VALUES_HPP_")
print("#define HEXWALL_TESTS_EXPECTED_VALUES_HPP_")
print()
print("namespace expected {")
print()
for line in out:
    print(line)
print()
print("}  // namespace expected")
print()
print("#endif  // HEXWALL_TESTS_EXPECTED_VALUES_HPP_")
