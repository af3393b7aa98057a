"""Embedded equations and values for the level-13 Cartan curves.

Every entry is kept as text in the polynomial format of ``polyalg`` (one
object per line), pinned by a sha256 checksum of the newline-joined lines.
``load`` parses an entry into its typed form.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import UnknownEntry
from .ffgeom import Model
from .polyalg import MPoly, UPoly

CANONICAL_VARS = tuple(f"x{i}" for i in range(1, 9))
PLANE_VARS = ("X", "Y", "Z")
AFFINE_VARS = ("x", "y")

_TEXT = {
    'quartic': (
        '-X^3*Y - X^3*Z + 2*X^2*Y^2 + X^2*Y*Z - X*Y^3 + X*Y^2*Z - 2*X*Y*Z^2 + X*Z^3 + 2*Y^2*Z^2 - 3*Y*Z^3',
    ),
    'f_split': (
        '6*x^2*y^5 - 5*x*y^6 + 18*x^2*y^4 - x*y^5 - 17*x^2*y^3 + 18*x*y^4 + 10*y^5 - 37*x^2*y^2 - 17*x*y^3 - 6*y^4 - 5*x^2*y - x*y^2 - 38*y^3 + 3*x^2 + 6*x*y + 28*y^2 + 14*y - 3',
        'y^4',
    ),
    'f_nonsplit': (
        '-11*x^2*y^8 + 22*x*y^9 - 11*y^10 - 20*x^2*y^7 + 29*x*y^8 + 2*y^9 - 41*x^2*y^6 + 51*x*y^7 - y^8 - 85*x^2*y^5 + 109*x*y^6 + 8*y^7 - 260*x^2*y^4 + 372*x*y^5 - 70*y^6 - 586*x^2*y^3 + 866*x*y^4 - 68*y^5 - 635*x^2*y^2 + 1124*x*y^3 - 453*y^4 - 312*x^2*y + 840*x*y^2 - 1016*y^3 - 56*x^2 + 340*x*y - 740*y^2 + 56*x - 168*y',
        'y^4',
    ),
    'q_split': (
        '6*x^2*y^5 - 5*x*y^6 + 18*x^2*y^4 - x*y^5 - 17*x^2*y^3 + 18*x*y^4 + 10*y^5 - 37*x^2*y^2 - 17*x*y^3 - 6*y^4 - 5*x^2*y - x*y^2 - 38*y^3 + 3*x^2 + 6*x*y + 28*y^2 + 14*y - 3',
    ),
    'q_nonsplit': (
        '-11*x^2*y^8 + 22*x*y^9 - 11*y^10 - 20*x^2*y^7 + 29*x*y^8 + 2*y^9 - 41*x^2*y^6 + 51*x*y^7 - y^8 - 85*x^2*y^5 + 109*x*y^6 + 8*y^7 - 260*x^2*y^4 + 372*x*y^5 - 70*y^6 - 586*x^2*y^3 + 866*x*y^4 - 68*y^5 - 635*x^2*y^2 + 1124*x*y^3 - 453*y^4 - 312*x^2*y + 840*x*y^2 - 1016*y^3 - 56*x^2 + 340*x*y - 740*y^2 + 56*x - 168*y',
    ),
    'sextic_split': (
        '43*x^6 - 194*x^5 - 115*x^4 + 692*x^3 + 85*x^2 - 498*x + 243',
    ),
    'sextic_nonsplit': (
        '2888*x^6 + 12500*x^5 + 13443*x^4 + 24786*x^3 + 134781*x^2 + 230254*x + 120131',
    ),
    'split_equations': (
        'x1*x2 - x1*x3 - x2^2 - x2*x4 + x2*x5 + x3*x6 - x3*x7 - x4*x6 - x4*x7 - x4*x8',
        '-x1^2 + 2*x1*x2 + x1*x4 - x1*x5 + x1*x6 + x3^2 + x3*x5 + x3*x6 - x3*x7 - x4^2 + x4*x5 - x4*x7 - x5*x8 + x6^2 + x6*x8 + x7^2',
        'x1^2 + x1*x3 - x1*x4 + x1*x5 + x1*x7 + x1*x8 - x3*x4 + x3*x7 + x3*x8 + x4^2 - 2*x4*x5 - x5*x6 + x5*x7 + x5*x8 - x6^2',
        '-x1*x6 - 2*x1*x8 + x2^2 + x2*x4 - x2*x5 - x3*x6 - x3*x8 - x4*x6 + x4*x8 + x5*x6 - x5*x7 - x5*x8 + x6^2',
        '-x1*x2 + x1*x3 - x1*x4 - 2*x1*x6 + x2^2 - x3^2 - x3*x5 - 2*x4^2 + x4*x6 + x5^2 + x5*x6',
        'x1*x2 - x1*x4 + x2^2 + 2*x2*x4 - x2*x5 + x3*x6 + x3*x7 - x3*x8 + x4*x6 + x5*x6 - x5*x7',
        '-x1*x2 + x1*x6 - x2^2 - x2*x5 - x3*x4 + x3*x5 - x3*x6 + x3*x8 + x4*x6 + x4*x8 - x5*x6 + x5*x7 + x5*x8 - x6^2 + x6*x8 + x7^2',
        'x1*x2 - x1*x3 + x2*x3 + x2*x4 + x2*x5 + x3*x7 - x3*x8 + x4^2 - x4*x6 + x4*x8 - x5^2 - x5*x7 - x6*x8 - x7^2',
        '-x1*x3 - x1*x4 - x1*x6 - 2*x2*x4 + x2*x6 + x3*x8 - x4*x7 - x5*x6',
        'x1*x2 - x1*x8 - x2*x5 - x2*x7 + x2*x8 - x3*x7 - x4*x5 - x4*x7 + x5^2 - x5*x8 - x6*x7 + x6*x8 + x7^2',
        '2*x1*x3 + x1*x4 + x1*x7 - x1*x8 + x2^2 + x2*x5 + x2*x7 + x3^2 + x3*x6 - x3*x7 + x3*x8 - x4*x5 - x4*x6 - x4*x7 + x5*x6 + x5*x7 + x6^2 + x6*x8 + x7^2',
        'x1*x3 - x1*x4 - x1*x5 - x1*x6 - x2*x4 + x2*x6 - x2*x8 - 2*x3*x4 - x3*x6 - x3*x7 + x3*x8 - x4^2 - x4*x5 + x6*x7',
        'x1*x5 - x1*x6 - x1*x7 + x2*x4 + x2*x5 - x2*x6 - x2*x8 + x3*x4 - x3*x8 - x4*x6 - x4*x7 - x4*x8 + x5^2 + x5*x6 + x6*x7 - x6*x8 - x7^2',
        '-x1^2 - x1*x2 - x1*x4 + x1*x6 + x2^2 + x2*x4 - x2*x8 + x3*x4 - 2*x3*x5 + x3*x7 + x4^2 + x4*x6 - x4*x8 - x5^2 + x6*x7 - x6*x8 - x7^2',
        'x1^2 - x1*x2 - x1*x3 + x1*x7 + 2*x1*x8 + x2*x3 - x2*x7 + x3^2 + x3*x4 + x3*x5 + x4^2 + 2*x4*x5 - x5*x6 - x5*x8',
    ),
    'nonsplit_equations': (
        'x1^2 - x1*x3 - x1*x4 - x1*x7 + x1*x8 + x2*x4 + x2*x5 + 2*x3*x4 - 2*x3*x5 - x3*x8 + 2*x4*x5 + x4*x7 + x5*x8 - x7^2 + x7*x8',
        '-x1*x3 + 2*x1*x5 + x1*x8 - 2*x3*x4 - x3*x5 + x3*x6 - x3*x7 - x4*x5 - x4*x6 + x4*x7 + x4*x8 - x5^2 + x5*x6 - 3*x5*x8 - x6*x7 - 3*x6*x8 + x7^2 - x8^2',
        '-x1*x3 + 2*x1*x4 + x1*x5 - 2*x1*x6 + 4*x1*x8 + x2*x4 + x2*x5 - x3*x4 + x3*x6 - x3*x7 - x4^2 + x4*x5 - 2*x4*x8 + 2*x5*x7 + x5*x8 - 2*x6*x8 + x7*x8 - x8^2',
        'x1*x3 + x1*x4 + x1*x5 - 3*x1*x6 + x1*x7 + 2*x1*x8 - x2*x3 - x2*x4 + x2*x5 + x2*x6 - x3^2 - x3*x4 - x3*x5 + x3*x6 - x3*x8 - 2*x4*x5 - x4*x8 + x5*x6 + x5*x7 + 2*x6^2 - 2*x6*x7 + x7^2 + x7*x8 - x8^2',
        'x1*x2 - x1*x3 + x1*x5 + x1*x6 - x1*x7 + x1*x8 + x2^2 + x2*x3 - x2*x4 - x2*x5 - x2*x6 + x3^2 - x3*x4 - x3*x5 - x3*x6 + x3*x8 - x4^2 + x4*x5 + 2*x4*x6 + x4*x7 - 2*x4*x8 - x5^2 + 2*x5*x6 + x5*x7 - 2*x5*x8 + x6*x7 - x6*x8 + x7*x8 - x8^2',
        '2*x1*x2 + x1*x3 - x1*x4 + x1*x6 - x1*x7 - x1*x8 + x2*x3 - 2*x2*x4 - x2*x5 - x2*x6 + x2*x7 + x3^2 - 2*x3*x4 - x3*x6 - x3*x7 + x4*x5 + x4*x6 + x4*x7 + 2*x4*x8 + x5*x6 - 2*x5*x8 + x6*x7 - x6*x8',
        '-x1^2 + x1*x2 + 2*x1*x3 + x1*x5 - x1*x6 - x1*x7 + 2*x1*x8 - x2^2 - x2*x3 + x2*x6 + x2*x7 + x2*x8 - x3*x4 - x3*x5 - x3*x8 - x4^2 + x4*x6 + x5^2 - x5*x6 - x6*x7 - x6*x8',
        '-x1^2 - x1*x2 + x1*x5 + 2*x1*x6 + x1*x7 + x1*x8 + x2*x3 - x2*x4 - x2*x5 + x2*x7 + x2*x8 - x3*x5 + x3*x6 - x3*x7 + x4*x5 - x4*x6 + x4*x7 - x5^2 + x5*x6 + x5*x7 - x5*x8 - 2*x6*x8 + x7*x8 - x8^2',
        '-2*x1*x2 + 2*x1*x3 - x1*x4 - x1*x5 + x1*x7 - x1*x8 - x2*x4 + 2*x2*x5 + 2*x2*x6 + x2*x8 - x3^2 + x3*x4 + x3*x5 + x3*x6 + x3*x7 - x3*x8 + x4^2 + x4*x5 + x4*x7 - x5^2 - 2*x5*x6 - x5*x7 + x5*x8 - x6*x7 + x6*x8 - x7^2 + x7*x8',
        '-2*x1*x3 - x1*x4 + x1*x5 - x1*x7 + 2*x1*x8 + x2^2 + x2*x3 - x2*x4 - x2*x7 + x3*x4 + x3*x5 + 2*x3*x6 - 2*x3*x7 + 2*x3*x8 - x4^2 + 2*x4*x5 + 2*x4*x7 - x4*x8 - x5^2 + 2*x5*x7 - x5*x8 + 2*x6*x7 - 2*x6*x8 + 2*x7*x8 - 2*x8^2',
        '-x1*x2 + 2*x1*x4 - x1*x6 + x1*x7 + x1*x8 - x2^2 + 2*x2*x4 + x2*x5 - x2*x6 + 2*x2*x7 + 2*x2*x8 - x4*x6 - x4*x7 - x4*x8 + x5*x6 + x5*x7 + x5*x8',
        'x1*x3 + 2*x1*x4 - x1*x5 - x1*x6 + x1*x7 + x1*x8 - x2^2 - x2*x3 - x2*x4 + x2*x5 + x2*x6 + x2*x7 - 2*x2*x8 - x3^2 + 2*x3*x5 + x3*x6 + x3*x7 - x3*x8 + x4*x5 - x4*x6 - x4*x7 - x4*x8 - x5*x6 + x5*x7 + 2*x5*x8 - x6*x7 + x6*x8 - x7^2 + x7*x8',
        '-x1^2 + x1*x2 + 2*x1*x3 - x1*x4 + x1*x6 - x1*x7 - x2*x3 - 2*x2*x4 - 2*x2*x5 - x2*x7 - x2*x8 - x3^2 - x3*x5 + x3*x7 - x3*x8 + x4^2 + x4*x5 + 2*x4*x7 + x4*x8 + x5*x6 + x5*x7 - x5*x8 + 2*x6*x8 + 2*x7^2 + 2*x7*x8 - 2*x8^2',
        'x1^2 + 2*x1*x2 - x1*x3 - x1*x4 + x1*x6 - x1*x8 - x2^2 + 2*x2*x3 - 2*x2*x5 + x2*x7 + 3*x3^2 - x3*x4 - 2*x3*x6 - x3*x7 - x4^2 + 3*x4*x6 + 2*x5^2 + x5*x6 + x5*x7 - 2*x6^2 - x6*x7 + x6*x8 - x7^2 - 2*x7*x8 + 2*x8^2',
        '2*x1^2 - 2*x1*x2 + x1*x4 + 3*x1*x5 - 2*x1*x6 - 2*x1*x7 - 2*x1*x8 + x2^2 - x2*x3 - 3*x2*x5 - x2*x7 - 3*x3*x4 + x3*x6 + x3*x8 + x4^2 + 3*x4*x5 - 2*x4*x6 + x4*x7 + x4*x8 + 2*x5^2 - 4*x5*x6 - 2*x5*x8 + 2*x6*x7 + x7^2 - 2*x7*x8 + x8^2',
    ),
    'pi_split': (
        '-x1 + x2 + 2*x4 + x5 - x6 + x7 - x8',
        '-x2 - x3 + x4 + x5 - x6 - x8',
        '-x1 - x2 - 2*x4 + x5 + x6',
    ),
    'pi_nonsplit': (
        '-3*x1 + 2*x2',
        '-3*x1 + x2 + 2*x4 - 2*x5',
        'x1 + x2 + x4 - x5',
    ),
    'rational_points_split': (
        '(-2:-1:-4:3:6:-3:1:4)',
        '(0:0:0:0:0:0:0:1)',
    ),
    'special_values': (
        'q_split; 0, 0; -3; -3',
        'q_split; 0, 3/2; -27/16; -3',
        'q_nonsplit; -1, 0; -112; -7',
        'q_nonsplit; 0, 3/2; -9624987/1024; -163',
    ),
    'kenku_U': (
        '117*x1^2 - 13*x1*x2 + 13*x1*x3 + 13*x4*x6 + 13*x4*x7 + 26*x4*x8 - 13*x5^2 + 13*x6*x8 + 13*x7^2',
        '238*x3^2 + 215*x3*x4 + 215*x3*x5 + 429*x3*x6 - 419*x3*x7 + 36*x3*x8 - 89*x4^2 + 185*x4*x5 + 130*x4*x6 - 505*x4*x7 - 313*x4*x8 + 305*x5^2 + 217*x5*x6 + 145*x5*x7 - 46*x5*x8 + 28*x6^2 - 7*x6*x7 + 352*x6*x8 + 351*x7^2 - 3*x7*x8 - 2*x8^2',
    ),
    'kenku_V': (
        '4637022*x1^2 + 4624659*x4*x6 - 5060016*x4*x7 + 14784393*x4*x8 - 6782997*x5^2 - 19275477*x5*x6 - 8559018*x5*x7 + 1545960*x5*x8 - 28694289*x6^2 - 8134854*x6*x7 - 4473261*x6*x8 + 6858072*x7^2 + 2366208*x7*x8 - 3989778*x8^2',
        '-209376188*x3^2 - 196485388*x3*x4 - 183091120*x3*x5 - 421799299*x3*x6 + 371436944*x3*x7 - 136573881*x3*x8 + 89731271*x4^2 - 151182225*x4*x5 - 140218639*x4*x6 + 488527387*x4*x7 + 280939604*x4*x8 - 277852129*x5^2 - 207933217*x5*x6 - 146929317*x5*x7 + 17764144*x5*x8 - 15033364*x6^2 + 3885141*x6*x7 - 323708963*x6*x8 - 329322311*x7^2 - 3989778*x7*x8',
    ),
    'kenku_X': (
        '13; 169:2, 1:-2',
    ),
    'kenku_Y': (
        '1; 1:2, 13:-2',
    ),
    's_split': (
        '4*x1 - x2 - x3 + x4 - 3*x5 - x6 - 2*x7 + x8',
        '-x2 + x3 + x4',
    ),
    's_nonsplit': (
        '78953974807*x1^2 + 26*x1*x2 - 25*x1*x3 - x1*x4 + 2*x3^2 + 238115162692*x4*x7 + 209337250703*x4*x8 - 582346348536*x5^2 + 727177285412*x5*x6 + 78542213920*x5*x7 - 563548816331*x5*x8 + 65380280758*x6^2 - 244488381626*x6*x7 + 82647686352*x6*x8 + 136959277010*x7^2 + 250609762421*x7*x8 - 257891423548*x8^2',
        '33279035581*x3^2 - 20440236060*x3*x4 + 161001990516*x3*x5 + 177481085270*x3*x6 - 284601313488*x3*x7 - 214125958084*x3*x8 - 116902000189*x4^2 + 103367036819*x4*x5 + 124067876928*x4*x6 - 155405328616*x4*x7 - 193679032128*x4*x8 - 57688123584*x5^2 - 123976858837*x5*x6 - 194732784800*x5*x7 - 165341806053*x5*x8 - 126114432327*x6^2 + 524882113804*x6*x7 + 271440452599*x6*x8 - 236487356215*x7^2 - 365606104840*x7*x8 - 113208254802*x8^2',
    ),
}

_CHECKSUMS = {
    'quartic': '0c9c58f07e7bc0ae3dcd897c3b1d0ef001776ac92aed4f3fa6aa7672d335f589',
    'f_split': 'ec5e5416b81d0d9653e833e7af78dc1de476ea489f2fbe30cd5e214cdee230d6',
    'f_nonsplit': '77c9ebd02dc29e74def9f0aeee15a11dfbc677662a63573447314fb0d642730e',
    'q_split': '5436768c7aeaeec9f36c0db3da55c13360549b69189764296d388c5c8e87b751',
    'q_nonsplit': '067aa8cfc087abb077faeec8cff6527399fa2199e1d0a4e48b09166e87da8213',
    'sextic_split': '5b73a1aa1bc094abc6c4f03831e9fa197b7e81c9c1d30fbf34cda99b83f92ca4',
    'sextic_nonsplit': '336c96dfbce09dcc5a543b33c3e76678db04e7fdb7fbfc673fd98389defd977c',
    'split_equations': '640212fe0096c83fb629bdf68a9c174d3704c896cd3bc5e65d2f0337d8192031',
    'nonsplit_equations': 'e94a8da769253382ffcb40a6b747a6786c22c6fe2dba3d40c1182540f991127f',
    'pi_split': 'd46e15c56c5be0aa859a64cc50a8e5d0052c34aeac5435e6738e52e5a3cc902e',
    'pi_nonsplit': 'f617589f3ee434bf85d09a8c9c26ad1ca6aec9f3d70b5ca03832651d77528870',
    'rational_points_split': '18b40e3dc755a3d2dcf1c2d598cf2aa5abf021ca41d5ba3a04577d547b9d6578',
    'special_values': '18e5863545d3fdfc05faed1d6cc9355a5a8f940e13253f66b9e01094f3d2e2e7',
    'kenku_U': '88b9a86f65cef7e7ec9a2ca1684b1203c25b38e38b4a65a190751cf727f0f334',
    'kenku_V': 'e48000a8d6bb4f57983857cc98b558b2dcd6de78e5ffe3d9715092c27111862b',
    'kenku_X': '7c14fc8af70b2b927ead515aa5b4c5a124a4ad3c5c4e1fa3402c9bb1d142a4aa',
    'kenku_Y': '58e5535948e807f8ab3aa4479bde339113c9d59bb19e1d8c6aff1d5fdde6c2a1',
    's_split': '85e8e9a92fea640c00f58836cf2506f94c824df7bf870256962b4b32ab9c045b',
    's_nonsplit': '07f7959804e7c8d5e7d69e8f8bed48d9e6b124d56e568a98f8ccc73914c34bcb',
}

# name -> (kind, provenance)
_CATALOG = {
    "quartic": ("poly", "level-13 results: plane quartic model of the plus curves"),
    "quartic_model": ("model", "level-13 results: plane quartic model of the plus curves"),
    "f_split": ("ratio", "singular models: split function f with y-power denominator"),
    "f_nonsplit": ("ratio", "singular models: nonsplit function f with y-power denominator"),
    "q_split": ("poly", "singular models: split q after clearing y^4"),
    "q_nonsplit": ("poly", "singular models: nonsplit q after clearing y^4"),
    "sextic_split": ("upoly", "singular models: split degree-6 ramification factor"),
    "sextic_nonsplit": ("upoly", "singular models: nonsplit degree-6 ramification factor"),
    "split_equations": ("polys", "appendix: 15 quadrics of the split canonical model"),
    "nonsplit_equations": ("polys", "appendix: 15 quadrics of the nonsplit canonical model"),
    "split_model": ("model", "appendix: split canonical model in P^7, genus 8"),
    "nonsplit_model": ("model", "appendix: nonsplit canonical model in P^7, genus 8"),
    "pi_split": ("map", "appendix: map from the split canonical model to the plane quartic"),
    "pi_nonsplit": ("map", "appendix: map from the nonsplit canonical model to the plane quartic"),
    "rational_points_split": ("points", "appendix: rational points table of the split model"),
    "special_values": ("values", "singular models: values of q at CM points"),
    "kenku_U": ("ratio", "maps to X0(169): numerator and denominator of U"),
    "kenku_V": ("ratio", "maps to X0(169): numerator and denominator of V"),
    "kenku_X": ("eta", "maps to X0(169): eta quotient X = 13 eta(169t)^2 / eta(t)^2"),
    "kenku_Y": ("eta", "maps to X0(169): eta quotient Y = eta(t)^2 / eta(13t)^2"),
    "s_split": ("ratio", "desingularization: split square root s"),
    "s_nonsplit": ("ratio", "desingularization: nonsplit square root s"),
}

_VARS = {
    "quartic": PLANE_VARS,
    "f_split": AFFINE_VARS, "f_nonsplit": AFFINE_VARS,
    "q_split": AFFINE_VARS, "q_nonsplit": AFFINE_VARS,
}


@dataclass(frozen=True)
class SpecialValue:
    function: str
    point: tuple[Fraction, Fraction]
    value: Fraction
    discriminant: int


@dataclass(frozen=True)
class EtaSpec:
    scale: int
    factors: tuple[tuple[int, int], ...]  # (N, r) for eta(N tau)^r


def entry_text(name: str) -> str:
    if name not in _TEXT:
        raise UnknownEntry(name)
    return "\n".join(_TEXT[name])


def checksum(name: str) -> str:
    return hashlib.sha256(entry_text(name).encode()).hexdigest()


def verify_checksums() -> dict[str, bool]:
    return {name: checksum(name) == _CHECKSUMS[name] for name in _TEXT}


def _poly(line: str, name: str) -> MPoly:
    return MPoly.parse(line, _VARS.get(name, CANONICAL_VARS))


def _parse_point(line: str) -> tuple[int, ...]:
    return tuple(int(c) for c in line.strip().strip("()").split(":"))


def _parse_value(line: str) -> SpecialValue:
    fn, pt, val, disc = (part.strip() for part in line.split(";"))
    a, b = (Fraction(c.strip()) for c in pt.split(","))
    return SpecialValue(fn, (a, b), Fraction(val), int(disc))


def _parse_eta(line: str) -> EtaSpec:
    scale, body = line.split(";")
    factors = tuple(tuple(int(t) for t in f.split(":")) for f in body.split(","))
    return EtaSpec(int(scale), factors)


@lru_cache(maxsize=None)
def load(name: str):
    """The typed object stored under name."""
    if name not in _CATALOG:
        raise UnknownEntry(name)
    kind = _CATALOG[name][0]
    if name == "quartic_model":
        return Model.build("quartic", "projective", [load("quartic")], PLANE_VARS, genus=3,
                           bad_primes_hint=(13,))
    if name in ("split_model", "nonsplit_model"):
        eqs = load(name.replace("model", "equations"))
        return Model.build(name.replace("_model", ""), "projective", eqs, CANONICAL_VARS, genus=8,
                           bad_primes_hint=(13,))
    lines = _TEXT[name]
    if kind == "poly":
        return _poly(lines[0], name)
    if kind == "upoly":
        return UPoly.parse(lines[0], "x")
    if kind in ("polys", "map"):
        return tuple(_poly(line, name) for line in lines)
    if kind == "ratio":
        num, den = (_poly(line, name) for line in lines)
        return num, den
    if kind == "points":
        return tuple(_parse_point(line) for line in lines)
    if kind == "values":
        return tuple(_parse_value(line) for line in lines)
    if kind == "eta":
        return _parse_eta(lines[0])
    raise AssertionError(kind)  # pragma: no cover


def catalog() -> list[tuple[str, str, str]]:
    return [(name, kind, cite) for name, (kind, cite) in _CATALOG.items()]


def affine_quartic() -> MPoly:
    """p(x, y, 1) in the variables (x, y)."""
    return load("quartic").subs({"Z": 1}).rename({"X": "x", "Y": "y"}).with_variables(AFFINE_VARS)


def affine_base_model() -> Model:
    return Model.build("quartic_affine", "affine", [affine_quartic()], AFFINE_VARS, genus=3,
                       bad_primes_hint=(13,))
