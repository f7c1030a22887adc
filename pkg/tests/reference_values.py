"""Reference values minted once with mpmath at 40 digits, rounded to double."""

GAMMA_INTEGER = [
    (1.0, 1.0),
    (2.0, 1.0),
    (3.0, 2.0),
    (6.0, 120.0),
    (10.0, 362880.0),
]

GAMMA_HALF_INTEGER = [
    (0.5, 1.772453850905516),
    (1.5, 0.886226925452758),
    (-0.5, -3.544907701811032),
    (-1.5, 2.363271801207355),
    (4.5, 11.631728396567448),
]

GAMMA_COMPLEX = [
    ((1 + 1j), (0.49801566811835607 - 0.15494982830181067j)),
    ((0.5 + 0.5j), (0.8181639995417473 - 0.7633138287139826j)),
    ((2.5 - 1.5j), (0.3099362258407414 - 0.7340842736214813j)),
    ((-1.5 + 0.5j), (0.9379166627878851 + 0.34920566814780485j)),
    ((-3.7 + 2.1j), (-0.0007195585790019682 + 0.000570853508296235j)),
    ((0.1 + 4j), (0.0016565414245271815 + 0.0021188384833955186j)),
    ((5 - 3j), (0.016041882741652327 + 9.433293289755987j)),
    ((-0.5 - 0.5j), (-1.58147782825573 + 0.05485017082776478j)),
    ((3.3 + 7.7j), (0.00359962845721472 - 0.002704716968373529j)),
    ((-7.2 - 0.3j), (5.583360886798715e-05 - 0.00033317746552038205j)),
]

GAMMA_REFERENCE = GAMMA_INTEGER + GAMMA_HALF_INTEGER + GAMMA_COMPLEX

# analytic continuation of log Gamma (not log of Gamma)
LOG_GAMMA = [
    ((1 + 2j), (-1.8760787864309294 + 0.12964631630978832j)),
    ((-2.5 + 0.3j), (-0.43208889261320194 - 9.093345421289742j)),
    ((0.3 - 4j), (-5.641063534820529 - 1.2364491215498066j)),
    ((7.5 + 2j), (7.252861989494222 + 3.9199572209120013j)),
]

BINOMIAL_HALF_QUARTER = 1.0787052023767587  # C(1/2, 1/4)
SQRT_1_PLUS_I = 1.09868411346781 + 0.45508986056222733j  # (1+i)^(1/2)
EXP_I_PI_QUARTER_HALF_I = 0.1469930581078104 + 0.1469930581078104j  # (-1)^(1/4 + i/2)
