# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled statevector kernels. Semantics mirror `reference` exactly;
see that module for the contract."""

from libc.math cimport cos, sin

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

ctypedef double complex cplx


cdef inline int _sign(unsigned long long v, unsigned long long mask) nogil:
    return 1 - 2 * (__builtin_popcountll(v & mask) & 1)


cdef inline cplx _y_unit(int n_y) nogil:
    cdef int r = n_y & 3
    if r == 0:
        return -1j
    elif r == 1:
        return 1.0
    elif r == 2:
        return 1j
    return -1.0


def apply_pauli_rotation(cplx[::1] amps, unsigned long long flip_mask,
                         unsigned long long phase_mask, int n_y, double theta):
    cdef Py_ssize_t dim = amps.shape[0]
    cdef double c = cos(theta)
    cdef double s = sin(theta)
    cdef cplx em = c - 1j * s
    cdef cplx ep = c + 1j * s
    cdef cplx w = _y_unit(n_y) * s
    cdef unsigned long long hb
    cdef Py_ssize_t j, p
    cdef cplx a, b
    if flip_mask == 0:
        for j in range(dim):
            if __builtin_popcountll(j & phase_mask) & 1:
                amps[j] = amps[j] * ep
            else:
                amps[j] = amps[j] * em
        return
    # visit each flip pair once via the top bit of the mask
    hb = flip_mask
    while hb & (hb - 1):
        hb &= hb - 1
    for j in range(dim):
        if j & hb:
            continue
        p = j ^ flip_mask
        a = amps[j]
        b = amps[p]
        amps[j] = c * a + w * (_sign(p, phase_mask) * b)
        amps[p] = c * b + w * (_sign(j, phase_mask) * a)


def apply_x_mixer(cplx[::1] amps, int n_qubits, double beta):
    cdef Py_ssize_t dim = amps.shape[0]
    cdef double c = cos(beta)
    cdef cplx w = -1j * sin(beta)
    cdef unsigned long long bit
    cdef Py_ssize_t j, p
    cdef int q
    cdef cplx a, b
    for q in range(n_qubits):
        bit = 1ULL << q
        for j in range(dim):
            if j & bit:
                continue
            p = j | bit
            a = amps[j]
            b = amps[p]
            amps[j] = c * a + w * b
            amps[p] = c * b + w * a


def apply_phases(cplx[::1] amps, double[::1] energies, double gamma):
    cdef Py_ssize_t dim = amps.shape[0]
    cdef Py_ssize_t j
    cdef double ang
    for j in range(dim):
        ang = -gamma * energies[j]
        amps[j] = amps[j] * (cos(ang) + 1j * sin(ang))


def accumulate_z_energy(double[::1] out, double coeff, unsigned long long z_mask):
    cdef Py_ssize_t dim = out.shape[0]
    cdef Py_ssize_t j
    for j in range(dim):
        out[j] += coeff * _sign(j, z_mask)


def expectation_diagonal(cplx[::1] amps, double[::1] energies):
    cdef Py_ssize_t dim = amps.shape[0]
    cdef Py_ssize_t j
    cdef double acc = 0.0
    cdef double re, im
    for j in range(dim):
        re = amps[j].real
        im = amps[j].imag
        acc += (re * re + im * im) * energies[j]
    return acc


def pauli_expectation(cplx[::1] amps, unsigned long long flip_mask,
                      unsigned long long phase_mask, int n_y):
    cdef Py_ssize_t dim = amps.shape[0]
    cdef cplx unit
    cdef int r = n_y & 3
    if r == 0:
        unit = 1.0
    elif r == 1:
        unit = 1j
    elif r == 2:
        unit = -1.0
    else:
        unit = -1j
    cdef cplx acc = 0
    cdef Py_ssize_t j, p
    for j in range(dim):
        p = j ^ flip_mask
        acc += amps[j].conjugate() * (_sign(p, phase_mask) * amps[p])
    return complex(unit * acc)
