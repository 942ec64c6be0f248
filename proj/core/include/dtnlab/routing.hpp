#pragma once

#include <memory>
#include <string_view>

#include "dtnlab/gbdt.hpp"
#include "dtnlab/router.hpp"

namespace dtnlab {

enum class RouterKind { epidemic, snw, maxprop, mlmaxprop };

std::string_view to_string(RouterKind kind);
RouterKind router_kind_from_string(std::string_view name);

struct RouterParams {
    std::uint32_t snw_copies = 8;
    int hop_threshold = 3;
    double ml_threshold = 0.5;
    const GbdtModel* model = nullptr; // mlmaxprop only; null means MaxProp fallback
};

std::unique_ptr<Router> make_router(RouterKind kind, const RouterParams& params);

} // namespace dtnlab
