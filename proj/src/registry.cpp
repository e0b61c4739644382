#include "geolog/spaces/registry.hpp"

#include "geolog/spaces/euclidean.hpp"
#include "geolog/spaces/spd_log_cholesky.hpp"
#include "geolog/spaces/sphere_quadrant.hpp"
#include "geolog/spaces/wasserstein1d.hpp"

namespace geolog {

SpacePtr make_space(const std::string& name, int dim) {
    if (name == "euclidean") return std::make_shared<EuclideanSpace>(dim);
    if (name == "spd") return std::make_shared<SpdLogCholeskySpace>(dim);
    if (name == "sphere") return std::make_shared<SphereQuadrantSpace>(dim);
    if (name == "wasserstein1d") return std::make_shared<Wasserstein1DSpace>(dim);
    throw std::invalid_argument("unknown space '" + name +
                                "' (expected euclidean|spd|sphere|wasserstein1d)");
}

}  // namespace geolog
