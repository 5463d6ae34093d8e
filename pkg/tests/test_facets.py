import pytest

from extreme_delaunay.automations.facets import harvest_facets
from extreme_delaunay.errors import NotExtremeError
from extreme_delaunay.services.cone_geometry import facet_orbits, lift_orbits


class TestHarvest:
    def test_segment(self, segment):
        harvest = harvest_facets(segment)
        assert harvest.n == 1
        assert harvest.bases == 1
        assert harvest.basis_orbits == ((0, 1),)
        assert harvest.orbits == ()
        assert harvest.facets == 0

    def test_square_is_not_extreme(self, square):
        with pytest.raises(NotExtremeError):
            harvest_facets(square)


@pytest.mark.slow
class TestSchlafliHarvest:
    @pytest.fixture(scope="class")
    def harvest(self, schlafli):
        return harvest_facets(schlafli)

    def test_basis_orbits(self, harvest):
        assert harvest.bases == 381672
        assert len(harvest.basis_orbits) == 26

    def test_contains_the_single_basis_orbits(self, harvest, schlafli):
        single = {o.representative for o in facet_orbits(schlafli)}
        assert single <= {o.representative for o in harvest.orbits}
        assert harvest.facets >= 20

    def test_representatives(self, harvest):
        for orbit in harvest.orbits:
            b = orbit.representative
            assert len(b) == 7
            assert sum(b.coords) == 1
            assert list(b.coords) == sorted(b.coords, reverse=True)
            assert 0 < orbit.found <= orbit.orbit_size

    def test_lifted_to_eight_points(self, harvest):
        lifted = lift_orbits(harvest.orbits, 1)
        assert len(lifted) == len(harvest.orbits)
        assert all(len(o.representative) == 8 and 0 in o.representative.coords for o in lifted)
