import json

import pytest


def gaussian_field_coefficients(m: int) -> list[int]:
    """Ideal counts of the Gaussian integers up to norm m (exact)."""
    def chi4(d):
        if d % 2 == 0:
            return 0
        return 1 if d % 4 == 1 else -1

    out = []
    for n in range(1, m + 1):
        a = 0
        d = 1
        while d * d <= n:
            if n % d == 0:
                a += chi4(d)
                if d != n // d:
                    a += chi4(n // d)
            d += 1
        out.append(a)
    return out


@pytest.fixture(scope="session")
def gaussian_field_file(tmp_path_factory):
    data = {
        "degree": 2,
        "discriminant": -4,
        "signature": [0, 1],
        "dirichlet_coefficients": gaussian_field_coefficients(5000),
        "gamma_factor_shifts": [0, 1],
    }
    path = tmp_path_factory.mktemp("fields") / "gaussian.json"
    path.write_text(json.dumps(data))
    return str(path)
