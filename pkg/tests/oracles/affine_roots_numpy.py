"""Independent oracle for roots of reduced words: reflection matrices built with numpy.

Coordinates are (e_1, ..., e_{n+1}, delta).  The Gram matrix is the identity on
e-coordinates and zero on delta.  Prints the roots of the stored affine D and
affine A words as lists of integers.
"""
import numpy as np


def reflection(alpha, gram):
    a = np.array(alpha)
    norm = a @ gram @ a
    return np.eye(len(a), dtype=int) - np.outer(a, a @ gram) * 2 // norm


def roots(simple, word, dim):
    gram = np.diag([1] * (dim - 1) + [0])
    mats = {i: reflection(v, gram) for i, v in simple.items()}
    out, acc = [], np.eye(dim, dtype=int)
    for i in word:
        out.append((acc @ np.array(simple[i])).tolist())
        acc = acc @ mats[i]
    return out


def affine_d(n):
    dim = n + 2
    simple = {}
    for i in range(1, n + 2):
        v = [0] * dim
        if i == 1:
            v[0] = v[1] = 1
        else:
            v[i - 1], v[i - 2] = 1, -1
        simple[i] = v
    v = [0] * dim
    v[n], v[n - 1], v[-1] = -1, -1, 1
    simple[0] = v
    w = list(range(n + 1, 0, -1)) + list(range(3, n + 2))
    word = w + [0] + list(range(n, 2, -1)) + list(range(1, n + 1)) + [0]
    return roots(simple, word, dim)


def affine_a(m):
    dim = m + 2
    simple = {}
    for i in range(1, m + 1):
        v = [0] * dim
        v[i - 1], v[i] = 1, -1
        simple[i] = v
    v = [0] * dim
    v[m], v[0], v[-1] = 1, -1, 1
    simple[0] = v
    word = list(range(1, m + 1)) + [0] + list(range(1, m))
    return roots(simple, word, dim)


if __name__ == "__main__":
    print("affine_d(3)", affine_d(3))
    print("affine_a(3)", affine_a(3))
