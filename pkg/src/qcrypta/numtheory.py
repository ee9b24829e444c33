"""Small integer helpers: primality and multiplicative order of 2."""


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n):
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def is_primitive_prime(n):
    """True iff n is prime and 2 generates (Z/nZ)^*, i.e. X^n - 1 splits over
    F_2 only as (X - 1)(X^{n-1} + ... + 1)."""
    if n < 3 or not is_prime(n):
        return False
    return all(pow(2, (n - 1) // p, n) != 1 for p in prime_factors(n - 1))


def next_primitive_prime(x):
    """Smallest primitive prime strictly greater than x."""
    n = max(x + 1, 3)
    while not is_primitive_prime(n):
        n += 1
    return n
