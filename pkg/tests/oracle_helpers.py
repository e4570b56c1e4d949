"""Independent oracles the suite checks the package against.

These deliberately avoid the package's Cayley-table machinery: the torus
oracle reduces words with a stack over the free-product inverses, and the
Klein-four oracle multiplies in (Z/2)^2 bit vectors.
"""

TORUS_INVERSE = {1: 3, 2: 4, 3: 1, 4: 2}

# digit -> element of (Z/2)^2 as a bitmask: a=(1,0), b=(0,1), ab=(1,1)
KLEIN_VECTOR = {1: 0b10, 2: 0b01, 3: 0b11}


def free_reduce(word):
    """Reduce a torus word by cancelling adjacent inverses, rightmost first."""
    stack = []
    for digit in reversed(word):
        if stack and stack[-1] == TORUS_INVERSE[digit]:
            stack.pop()
        else:
            stack.append(digit)
    return tuple(reversed(stack))


def torus_accepts(word):
    """A word is reduced exactly when no cancellation ever fires."""
    return len(word) > 0 and len(free_reduce(word)) == len(word)


def klein_accepts(word):
    """Accepted iff no suffix product is the identity of (Z/2)^2."""
    if not word:
        return False
    acc = 0
    for digit in reversed(word):
        acc ^= KLEIN_VECTOR[digit]
        if acc == 0:
            return False
    return True
