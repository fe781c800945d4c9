# Copyright 2026 The qstrat Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Solves an SDPA sparse file with CVXOPT and prints the optimal value.

The file's primal is min c^T x s.t. sum_i x_i F_i - F_0 >= 0, written for
CVXOPT as sum_i x_i (-F_i) <= -F_0.
"""

import re
import sys

import numpy as np
import scipy.linalg
from cvxopt import matrix, solvers


def parse(text):
    tokens = []
    for line in text.splitlines():
        if line.startswith('"') or line.startswith("*"):
            continue
        line = line.split("=")[0]
        tokens.extend(re.sub(r"[,{}()]", " ", line).split())
    pos = 0
    m = int(tokens[pos]); pos += 1
    nblock = int(tokens[pos]); pos += 1
    sizes = [abs(int(t)) for t in tokens[pos:pos + nblock]]; pos += nblock
    c = [float(t) for t in tokens[pos:pos + m]]; pos += m
    mats = [[[[0.0] * s for _ in range(s)] for s in sizes] for _ in range(m + 1)]
    while pos < len(tokens):
        k, b, i, j = (int(t) for t in tokens[pos:pos + 4])
        v = float(tokens[pos + 4])
        pos += 5
        mats[k][b - 1][i - 1][j - 1] += v
        if i != j:
            mats[k][b - 1][j - 1][i - 1] += v
    return m, sizes, c, mats


def main():
    with open(sys.argv[1]) as f:
        m, sizes, c, mats = parse(f.read())
    # CVXOPT needs linearly independent F_i; dependent ones get x_i = 0.
    stacked = np.array([np.concatenate([np.ravel(mats[i][b]) for b in range(len(sizes))])
                        for i in range(1, m + 1)]).T
    _, r, piv = scipy.linalg.qr(stacked, pivoting=True, mode="economic")
    diag = np.abs(np.diag(r))
    rank = int(np.sum(diag > 1e-10 * diag.max()))
    keep = sorted(int(p) + 1 for p in piv[:rank])
    c = [c[i - 1] for i in keep]
    m = len(keep)
    gs, hs = [], []
    for b, s in enumerate(sizes):
        cols = []
        for i in keep:
            cols.append([-mats[i][b][r][q] for q in range(s) for r in range(s)])
        gs.append(matrix(cols, (s * s, m)))
        hs.append(matrix([[-mats[0][b][r][q] for r in range(s)] for q in range(s)]))
    solvers.options["show_progress"] = False
    solvers.options["abstol"] = 1e-9
    solvers.options["reltol"] = 1e-9
    solvers.options["feastol"] = 1e-9
    sol = solvers.sdp(matrix(c), Gs=gs, hs=hs)
    print("%s %.12g" % (sol["status"], sol["primal objective"]))


if __name__ == "__main__":
    main()
