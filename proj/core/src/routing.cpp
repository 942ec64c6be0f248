#include "dtnlab/routing.hpp"

#include "dtnlab/error.hpp"
#include "dtnlab/routing_epidemic.hpp"
#include "dtnlab/routing_maxprop.hpp"
#include "dtnlab/routing_spray_wait.hpp"

namespace dtnlab {

std::string_view to_string(RouterKind kind) {
    switch (kind) {
        case RouterKind::epidemic: return "epidemic";
        case RouterKind::snw: return "snw";
        case RouterKind::maxprop: return "maxprop";
        case RouterKind::mlmaxprop: return "mlmaxprop";
    }
    return "?";
}

RouterKind router_kind_from_string(std::string_view name) {
    if (name == "epidemic") return RouterKind::epidemic;
    if (name == "snw") return RouterKind::snw;
    if (name == "maxprop") return RouterKind::maxprop;
    if (name == "mlmaxprop") return RouterKind::mlmaxprop;
    throw ConfigError("unknown router '" + std::string(name) +
                      "' (expected epidemic, snw, maxprop or mlmaxprop)");
}

std::unique_ptr<Router> make_router(RouterKind kind, const RouterParams& params) {
    switch (kind) {
        case RouterKind::epidemic:
            return std::make_unique<EpidemicRouter>();
        case RouterKind::snw:
            return std::make_unique<SprayAndWaitRouter>(params.snw_copies);
        case RouterKind::maxprop:
            return std::make_unique<MaxPropRouter>(params.hop_threshold);
        case RouterKind::mlmaxprop:
            return std::make_unique<MlMaxPropRouter>(params.hop_threshold, params.model,
                                                     params.ml_threshold);
    }
    throw Error("make_router: bad kind");
}

} // namespace dtnlab
