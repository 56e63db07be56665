"""IDEA block cipher: 8 rounds plus output transform on 64-bit blocks."""

from __future__ import annotations

MASK16 = 0xFFFF
MASK128 = (1 << 128) - 1


def _mul(a: int, b: int) -> int:
    # multiplication mod 2^16 + 1 with 0 standing for 2^16
    a = a or 0x10000
    b = b or 0x10000
    return (a * b % 0x10001) & MASK16


def _mul_inv(a: int) -> int:
    if a <= 1:
        return a
    return pow(a, -1, 0x10001) & MASK16


def _neg(a: int) -> int:
    return -a & MASK16


def encryption_subkeys(key: int) -> list[int]:
    keys = []
    k = key
    while len(keys) < 52:
        keys.extend((k >> (112 - 16 * i)) & MASK16 for i in range(8))
        k = ((k << 25) | (k >> 103)) & MASK128
    return keys[:52]


def decryption_subkeys(ek: list[int]) -> list[int]:
    dk = [_mul_inv(ek[48]), _neg(ek[49]), _neg(ek[50]), _mul_inv(ek[51]), ek[46], ek[47]]
    for j in range(7, 0, -1):
        b = 6 * j
        dk += [_mul_inv(ek[b]), _neg(ek[b + 2]), _neg(ek[b + 1]), _mul_inv(ek[b + 3]),
               ek[b - 2], ek[b - 1]]
    dk += [_mul_inv(ek[0]), _neg(ek[1]), _neg(ek[2]), _mul_inv(ek[3])]
    return dk


def _crypt(block: int, z: list[int]) -> int:
    if not 0 <= block < 1 << 64:
        raise ValueError("IDEA block must be a 64-bit unsigned integer")
    x1, x2, x3, x4 = ((block >> s) & MASK16 for s in (48, 32, 16, 0))
    for r in range(8):
        k = z[6 * r: 6 * r + 6]
        a = _mul(x1, k[0])
        b = (x2 + k[1]) & MASK16
        c = (x3 + k[2]) & MASK16
        d = _mul(x4, k[3])
        e = _mul(a ^ c, k[4])
        f = _mul(((b ^ d) + e) & MASK16, k[5])
        e = (e + f) & MASK16
        x1, x2, x3, x4 = a ^ f, c ^ f, b ^ e, d ^ e
    y1 = _mul(x1, z[48])
    y2 = (x3 + z[49]) & MASK16
    y3 = (x2 + z[50]) & MASK16
    y4 = _mul(x4, z[51])
    return (y1 << 48) | (y2 << 32) | (y3 << 16) | y4


def _key_int(key) -> int:
    if isinstance(key, (bytes, bytearray)):
        if len(key) != 16:
            raise ValueError("IDEA key must be 16 bytes")
        return int.from_bytes(key, "big")
    if not 0 <= key <= MASK128:
        raise ValueError("IDEA key must be a 128-bit unsigned integer")
    return key


class IDEA:
    def __init__(self, key):
        self.ek = encryption_subkeys(_key_int(key))
        self.dk = decryption_subkeys(self.ek)

    def encrypt_block(self, block: int) -> int:
        return _crypt(block, self.ek)

    def decrypt_block(self, block: int) -> int:
        return _crypt(block, self.dk)


def idea_encrypt_block(key, block: int) -> int:
    return IDEA(key).encrypt_block(block)


def idea_decrypt_block(key, block: int) -> int:
    return IDEA(key).decrypt_block(block)
