import json

import pytest
from typer.testing import CliRunner

from extreme_delaunay.cli import app
from extreme_delaunay.services.constructions import gosset_neighbor
from extreme_delaunay.services.formats import write_polytope

runner = CliRunner()


def lines(result):
    return result.stdout.splitlines()


@pytest.fixture
def square_file(write_file, square):
    return write_file("square.poly", write_polytope(square))


@pytest.fixture
def cube_file(write_file, cube):
    return write_file("cube.poly", write_polytope(cube))


class TestCheck:
    def test_hypermetric(self, write_file):
        result = runner.invoke(app, ["check", str(write_file("d.txt", "2\n1 1 1\n"))])
        assert result.exit_code == 0
        assert "HYPERMETRIC" in lines(result)

    def test_violated(self, write_file):
        result = runner.invoke(app, ["check", str(write_file("d.txt", "2\n3 1 1\n"))])
        assert result.exit_code == 1
        assert "VIOLATED b=(1,1,-1)" in lines(result)

    def test_brute_force(self, write_file):
        path = write_file("d.txt", "2\n3 1 1\n")
        result = runner.invoke(app, ["check", str(path), "--brute-force", "2"])
        assert result.exit_code == 1

    def test_zero_denominator(self, write_file):
        result = runner.invoke(app, ["check", str(write_file("d.txt", "2\n1 1/0 1\n"))])
        assert result.exit_code == 2

    def test_missing_file(self, tmp_path):
        result = runner.invoke(app, ["check", str(tmp_path / "absent.txt")])
        assert result.exit_code == 2

    def test_node_budget(self, write_file):
        path = write_file("d.txt", "3\n1 1 1 2 2 2\n")
        result = runner.invoke(app, ["check", str(path), "--budget-nodes", "1"])
        assert result.exit_code == 3


class TestPolytopeCommands:
    def test_ann(self, write_file):
        result = runner.invoke(app, ["ann", str(write_file("d.txt", "2\n1 1 2\n"))])
        assert result.exit_code == 0
        assert lines(result)[0] == "4"
        assert "(-1,1,1)" in lines(result)

    def test_aut(self, square_file):
        result = runner.invoke(app, ["aut", str(square_file)])
        assert result.exit_code == 0
        assert "|Aut| = 8" in lines(result)

    def test_extreme(self, cube_file, write_file):
        result = runner.invoke(app, ["extreme", str(cube_file)])
        assert result.exit_code == 1
        assert "NOT EXTREME rank=3" in lines(result)
        result = runner.invoke(app, ["extreme", str(write_file("seg.poly", "1\n1\n"))])
        assert result.exit_code == 0
        assert "EXTREME rank=0" in lines(result)

    def test_bases(self, cube_file):
        result = runner.invoke(app, ["bases", str(cube_file)])
        assert lines(result)[0] == "56"
        assert len(lines(result)) == 57

    def test_base_orbits(self, cube_file):
        result = runner.invoke(app, ["bases", str(cube_file), "--orbits"])
        assert result.exit_code == 0
        sizes = [int(line.split()[0].split("=")[1]) for line in lines(result)[2:]]
        assert sum(sizes) == 56

    def test_iso(self, square_file, write_file):
        coords = write_file("sq.poly", "coordinates\n2\n4\n0 0\n0 1\n1 0\n1 1\n")
        result = runner.invoke(app, ["iso", str(square_file), str(coords)])
        assert result.exit_code == 0
        assert lines(result)[0] == "ISOMETRIC"
        segment = write_file("seg.poly", "1\n1\n")
        result = runner.invoke(app, ["iso", str(square_file), str(segment)])
        assert result.exit_code == 1
        assert "NOT ISOMETRIC" in lines(result)

    def test_skeleton(self, cube_file):
        result = runner.invoke(app, ["skeleton", str(cube_file)])
        assert lines(result)[0] == "edges=12"

    def test_facets_needs_extreme(self, square_file):
        result = runner.invoke(app, ["facets", str(square_file)])
        assert result.exit_code == 2


class TestCvp:
    def test_exact(self, write_file):
        gram = write_file("g.txt", "2\n1 0\n0 1\n")
        result = runner.invoke(app, ["cvp", str(gram), "1/2,1/2", "1/2"])
        assert result.exit_code == 0
        assert lines(result) == ["4", "(0,0)", "(0,1)", "(1,0)", "(1,1)"]

    def test_dispatch_none(self, write_file):
        gram = write_file("g.txt", "2\n1 1\n1 1\n")
        result = runner.invoke(app, ["cvp", str(gram), "1/2,0", "1/4", "--mode", "dispatch"])
        assert result.exit_code == 1
        assert lines(result) == ["positive_semidefinite rank=1", "NONE"]

    def test_bad_mode(self, write_file):
        gram = write_file("g.txt", "1\n1\n")
        result = runner.invoke(app, ["cvp", str(gram), "0", "1", "--mode", "nearest"])
        assert result.exit_code == 2


class TestExplore:
    def test_cut_ray(self, write_file, tmp_path):
        ray = write_file("cut.txt", "2\n0 1 1\n")
        out = tmp_path / "met3"
        result = runner.invoke(app, ["explore", str(ray), "--from-ray", "--out", str(out)])
        assert result.exit_code == 0
        assert lines(result)[0].startswith("COMPLETE iterations=1")
        report = json.loads((tmp_path / "met3.classes").read_text())
        assert report["neighbor_count"] == 2
        assert report["classes"][0]["multiplicity"] == 2
        assert report["classes"][0]["representative_ray"] == [1, 0, 1]
        log = (tmp_path / "met3.log").read_text()

        again = runner.invoke(app, ["explore", str(ray), "--from-ray", "--out", str(out)])
        assert again.exit_code == 0
        assert (tmp_path / "met3.log").read_text() == log

    def test_segment(self, write_file, tmp_path):
        result = runner.invoke(
            app, ["explore", str(write_file("seg.poly", "1\n1\n")), "--out", str(tmp_path / "s")]
        )
        assert result.exit_code == 0
        assert "neighbors=0" in (tmp_path / "s.log").read_text()

    def test_not_extreme(self, square_file, tmp_path):
        result = runner.invoke(app, ["explore", str(square_file), "--out", str(tmp_path / "q")])
        assert result.exit_code == 2

    def test_missing_output_directory(self, square_file, tmp_path):
        out = tmp_path / "nowhere" / "q"
        result = runner.invoke(app, ["explore", str(square_file), "--out", str(out)])
        assert result.exit_code == 2

    def test_bad_thread_count(self, write_file, tmp_path):
        ray = write_file("cut.txt", "2\n0 1 1\n")
        result = runner.invoke(
            app, ["explore", str(ray), "--from-ray", "--threads", "0", "--out", str(tmp_path / "t")]
        )
        assert result.exit_code == 2

    def test_reports_are_reproducible(self, write_file, tmp_path):
        ray = write_file("cut5.txt", "4\n1 1 1 1 0 0 0 0 0 0\n")

        def run(stem, *flags):
            out = tmp_path / stem
            result = runner.invoke(app, [*flags, "explore", str(ray), "--from-ray", "-o", str(out)])
            assert result.exit_code == 0
            classes = (tmp_path / f"{stem}.classes").read_bytes()
            return classes, (tmp_path / f"{stem}.log").read_bytes()

        first = run("first")
        assert run("second") == first
        assert run("single", "--threads", "1") == first
        assert run("pooled", "--threads", "4") == first
        report = json.loads(first[0])
        assert report["neighbor_count"] == 14

    def test_explore_threads_override_global(self, write_file, tmp_path):
        ray = write_file("cut.txt", "2\n0 1 1\n")
        args = ["explore", str(ray), "--from-ray", "--threads", "2", "--out", str(tmp_path / "t")]
        result = runner.invoke(app, ["--threads", "0", *args])
        assert result.exit_code == 0


class TestGlobalThreads:
    def test_accepted_by_single_tests(self, write_file):
        path = write_file("d.txt", "2\n1 1 2\n")
        assert runner.invoke(app, ["--threads", "4", "check", str(path)]).exit_code == 0
        result = runner.invoke(app, ["--threads", "4", "ann", str(path)])
        assert result.exit_code == 0
        assert lines(result)[0] == "4"

    def test_validated(self, write_file):
        path = write_file("d.txt", "2\n1 1 1\n")
        assert runner.invoke(app, ["--threads", "0", "check", str(path)]).exit_code == 2
        assert runner.invoke(app, ["--threads=-1", "ann", str(path)]).exit_code == 2


class TestFacets:
    def test_all_bases_of_segment(self, write_file):
        seg = str(write_file("seg.poly", "1\n1\n"))
        result = runner.invoke(app, ["facets", seg, "--all-bases"])
        assert result.exit_code == 0
        assert lines(result) == ["bases=1 basis_orbits=1", "orbits=0 facets=0"]

    def test_extend(self, write_file):
        seg = str(write_file("seg.poly", "1\n1\n"))
        result = runner.invoke(app, ["facets", seg, "--extend", "2"])
        assert result.exit_code == 0
        assert lines(result)[-1] == "extended=2 points=4 orbits=0"
        assert runner.invoke(app, ["facets", seg, "--extend=-1"]).exit_code == 2

    @pytest.mark.slow
    def test_schlafli_all_bases(self, write_file, schlafli):
        path = write_file("schlafli.poly", write_polytope(schlafli))
        result = runner.invoke(app, ["facets", str(path), "--all-bases", "--extend", "1"])
        assert result.exit_code == 0
        assert lines(result)[0] == "bases=381672 basis_orbits=26"
        orbit_count = int(lines(result)[1].split()[0].split("=")[1])
        assert f"extended=1 points=8 orbits={orbit_count}" in lines(result)


@pytest.mark.slow
class TestGossetNeighbor:
    def test_aut(self, write_file):
        path = write_file("e7.poly", write_polytope(gosset_neighbor()))
        result = runner.invoke(app, ["aut", str(path)])
        assert result.exit_code == 0
        assert "|Aut| = 1440" in lines(result)

    def test_extreme(self, write_file):
        path = write_file("e7.poly", write_polytope(gosset_neighbor()))
        result = runner.invoke(app, ["extreme", str(path)])
        assert result.exit_code == 0
        assert lines(result) == ["EXTREME rank=27"]
