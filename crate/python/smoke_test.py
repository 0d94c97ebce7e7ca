"""Smoke test for the quandlekit Python bindings."""

import json

import quandlekit


def main():
    d3 = quandlekit.construct("affine:Z3:2")
    assert d3 == [[0, 2, 1], [2, 1, 0], [1, 0, 2]], d3

    report = json.loads(quandlekit.analyze(d3))
    assert report["schema_version"] == 1
    assert report["latin"] and report["simple"]

    text = quandlekit.format(d3)
    assert quandlekit.parse(text) == d3

    q1 = quandlekit.construct("coset:Gpq:5:3:d0")
    qa = quandlekit.construct("coset:Gpq:5:3:d1")
    assert quandlekit.isomorphism(q1, q1) == list(range(15))
    assert quandlekit.isomorphism(q1, qa) is None

    pq = json.loads(quandlekit.classify("pq", [3, 5]))
    assert pq["counts"] == {"reducible": 3, "si": 2}, pq["counts"]

    appendix = json.loads(quandlekit.verify("appendix"))
    assert appendix["passed"], appendix

    for bad in (lambda: quandlekit.construct("affine:Q5:2"), lambda: quandlekit.parse("2\n0 0\n1 1\n")):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
