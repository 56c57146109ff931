"""Identity corpus shared by the prover tests and the acceptance audit.

Each entry is ``(env_text, identity, n0)`` for identities that hold for
all ``n >= n0``.
"""

FIB = "F 1 -1 0 1\nL 1 -1 2 1\n"
PERIODIC = "U 1 1 0 1\nW 1 1 2 1\n"
DEGEN = "U 2 4 0 1\nV 2 4 2 2\n"
LINEAR = "N 2 1 0 1\nC 2 1 2 2\n"
GEOMETRIC = "A 3 0 1 2\n"
ALTERNATING = "Z 0 3 0 1\nY 0 3 2 0\n"

DET31 = "det[[F[n],F[n+1],F[n+2]],[F[n+2],F[n],F[n+1]],[F[n+1],F[n+2],F[n]]] = 2*(F[n]^3 + F[n+1]^3)"

# (-1)^n written as a degree-2 expression in Fibonacci numbers
SIGN = "(F[n+1]^2 - F[n+1]*F[n] - F[n]^2)"

TRUE_IDENTITIES = [
    (FIB, DET31, 0),
    (FIB, "F[n+2] = F[n+1] + F[n]", 0),
    (FIB, "F[2n+1] = F[n+1]^2 + F[n]^2", 0),
    (FIB, "F[2n] = F[n]*L[n]", 0),
    (FIB, "L[n] = F[n-1] + F[n+1]", 0),
    (FIB, f"F[3n] = 5*F[n]^3 + 3*{SIGN}*F[n]", 0),
    (FIB, f"L[n]^2 - 5*F[n]^2 = 4*{SIGN}", 0),
    (FIB, f"F[n+1]*F[n-1] - F[n]^2 = {SIGN}", 0),
    (FIB, "det[[F[n+1], F[n]], [F[n], F[n-1]]] = F[n+1]*F[n-1] - F[n]^2", 0),
    (FIB, "F[n+1] = 1/2*F[n] + 1/2*L[n]", 0),
    (FIB, f"L[2n] = L[n]^2 - 2*{SIGN}", 0),
    (FIB, "F[n]^3 + F[n]^3 = 2*F[n]^3", 0),
    (FIB, "1 = 1", 0),
    (FIB, "-F[n] = -1*F[n]", 0),
    (FIB, "(F[n] + L[n])^2 = 4*F[n+1]^2", 0),
    (FIB, "F[4n] = F[2n]*L[2n]", 0),
    (FIB, "F[5] * F[n] = 5*F[n]", 0),
    (PERIODIC, "U[n+3] = -U[n]", 0),
    (PERIODIC, "U[n]^6 = U[n+6]^6", 0),
    (PERIODIC, "U[2n] = U[n]*W[n]", 0),
    (DEGEN, "U[n+4]^3 + 512*U[n+1]^3 = 0", 0),
    (DEGEN, "U[2n] = U[n]*V[n]", 0),
    (LINEAR, "N[2n] = 2*N[n]", 0),
    (LINEAR, "N[n]^2 = N[n+1]*N[n-1] + 1", 0),
    (LINEAR, "C[n] = 2", 0),
    (GEOMETRIC, "A[n+2] = 3*A[n+1]", 0),
    (GEOMETRIC, "A[n+1] = 3*A[n]", 1),
    (ALTERNATING, "Z[n+2] = -3*Z[n]", 0),
    (ALTERNATING, "Z[2n] = Z[n]*Y[n]", 0),
]

FALSE_IDENTITIES = [
    (FIB, "F[n+2] = F[n+1]", 0, 1),
    (FIB, "F[2n] = F[n]^2", 0, 2),
    (FIB, "F[n]^3 = F[3n]", 0, 1),
    (GEOMETRIC, "A[n+1] = 3*A[n]", 0, 0),
    (PERIODIC, "U[n+3] = U[n]", 0, 1),
]
