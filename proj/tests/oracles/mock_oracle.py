#!/usr/bin/env python3
"""Straight-line reference for the deterministic mock backends and ROSIS.

Used to compute the frozen expected values in the C++ unit tests. Kept
independent of the C++ code on purpose: nothing here is generated from it.
"""
import math
import struct
import string
import sys
import zlib

OFFSET = 14695981039346656037
PRIME = 1099511628211
MASK = (1 << 64) - 1
DIM = 256
MAGIC = b"MOCKIMG1"


def fnv1a64(data: bytes) -> int:
    h = OFFSET
    for b in data:
        h ^= b
        h = (h * PRIME) & MASK
    return h


SEPARATORS = set(" \t\n\v\f\r") | set(string.punctuation)


def embed_tokens(text: str):
    out, cur = [], []
    for ch in text.encode("utf-8"):
        c = chr(ch) if ch < 128 else None
        if c is not None and c in SEPARATORS:
            if cur:
                out.append(bytes(cur))
                cur = []
        else:
            if c is not None and "A" <= c <= "Z":
                ch = ch + 32
            cur.append(ch)
    if cur:
        out.append(bytes(cur))
    return out


def mock_embed(text: str):
    v = [0.0] * DIM
    for tok in embed_tokens(text):
        h = fnv1a64(tok)
        folded = (h ^ (h >> 32)) & 0xFFFFFFFF
        v[h % DIM] += 1.0 if (folded & 1) == 0 else -1.0
    n = math.sqrt(sum(x * x for x in v))
    if n == 0.0:
        return v, True
    return [x / n for x in v], False


def mock_generate(prompt: str, seed: int) -> bytes:
    return MAGIC + struct.pack(">Q", seed) + prompt.encode("utf-8")


def mock_caption(image: bytes) -> str:
    if len(image) >= 16 and image[:8] == MAGIC:
        seed_bytes = image[8:16]
        prompt = image[16:].decode("utf-8")
        if struct.unpack(">Q", seed_bytes)[0] == 0:
            return prompt
        kept = [t for t in prompt.split() if fnv1a64(seed_bytes + b"\x1f" + t.encode()) % 4 != 0]
        return " ".join(kept)
    return "image-" + format(fnv1a64(image), "016x")[:8]


def cosine_distance(a, b):
    dot = sum(x * y for x, y in zip(a, b))
    na = math.sqrt(sum(x * x for x in a))
    nb = math.sqrt(sum(x * x for x in b))
    return min(2.0, max(0.0, 1.0 - dot / (na * nb)))


def rosis(prompt, seeds):
    ref, _ = mock_embed(prompt)
    rows = []
    for s in seeds:
        cap = mock_caption(mock_generate(prompt, s))
        e, degenerate = mock_embed(cap)
        d = 2.0 if degenerate else cosine_distance(e, ref)
        rows.append((s, cap, d))
    return rows


if __name__ == "__main__":
    print("fnv(empty) =", fnv1a64(b""))
    print("fnv(00) =", fnv1a64(b"\x00"))
    print("fnv(abc) =", fnv1a64(b"abc"))
    print("caption(red fox jumps, 7) =", repr(mock_caption(mock_generate("red fox jumps", 7))))
    print("caption(ff 00) =", repr(mock_caption(b"\xff\x00")))
    for s, cap, d in rosis("red fox jumps", [0, 1, 2, 3]):
        print(f"seed {s}: caption={cap!r} distance={d!r}")
    for s, cap, d in rosis("red fox jumps", [1, 2, 3]):
        print(f"no-anchor seed {s}: caption={cap!r} distance={d!r}")
    co = zlib.compressobj(zlib.Z_DEFAULT_COMPRESSION, zlib.DEFLATED, 31)
    gz = co.compress(b"ab" * 500) + co.flush()
    print("gzip('ab'*500) size =", len(gz))
    co = zlib.compressobj(zlib.Z_DEFAULT_COMPRESSION, zlib.DEFLATED, 31)
    print("gzip('') size =", len(co.compress(b"") + co.flush()))
    for text in ["Hello", "Red, FOX!", "café au lait"]:
        v, _ = mock_embed(text)
        print(f"embed({text!r}) nonzero =", [(i, round(x, 12)) for i, x in enumerate(v) if x != 0.0])
    a, _ = mock_embed("red fox")
    b, _ = mock_embed("red dog")
    print("distance(red fox, red dog) =", repr(cosine_distance(a, b)))
    print("caption(generate('a  b\\tc', 5)) =", repr(mock_caption(mock_generate("a  b\tc", 5))))
    print("generate('x', 258) hex =", mock_generate("x", 258).hex())
