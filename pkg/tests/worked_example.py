"""Hand-written amplitudes of the three-qubit walkthrough, one dict per step."""

import numpy as np

A = 2


def expected_steps(alpha, phi):
    al = {(x, y, z): alpha[4 * x + 2 * y + z] for x in (0, 1) for y in (0, 1) for z in (0, 1)}
    e = np.exp(1j * phi)
    untouched = {(0, y, z): al[0, y, z] for y in (0, 1) for z in (0, 1)}

    after_l = dict(untouched)
    after_l.update({(A, y, z): al[1, y, z] for y in (0, 1) for z in (0, 1)})

    after_u12 = dict(untouched)
    after_u12.update({(A, 0, z): al[1, 0, z] for z in (0, 1)})
    after_u12.update({(1, A, z): al[1, 1, z] for z in (0, 1)})

    after_v = dict(after_u12)
    after_v[1, A, 1] = al[1, 1, 1] * e

    after_u21 = dict(untouched)
    after_u21.update({(A, 0, z): al[1, 0, z] for z in (0, 1)})
    after_u21[A, 1, 0] = al[1, 1, 0]
    after_u21[A, 1, 1] = al[1, 1, 1] * e

    final = {((1 if x == A else x), y, z): amp for (x, y, z), amp in after_u21.items()}
    return [after_l, after_u12, after_v, after_u21, final]


def dict_to_vector(terms):
    v = np.zeros(27, dtype=complex)
    for (x, y, z), amp in terms.items():
        v[9 * x + 3 * y + z] += amp
    return v
