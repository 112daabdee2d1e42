#ifndef NETSPACE_REPORT_HPP
#define NETSPACE_REPORT_HPP

#include <cstdio>
#include <string>
#include <vector>

#include "netspace/probes.hpp"
#include "netspace/witness.hpp"

namespace netspace {

struct SequenceRow {
    int n;
    double distance;
    double norm_total;
    double norm_scaling;
    double empirical_lipschitz;
};

// One row per witness index: distance to the limit in the sequence's own
// convergence mode, both parameter norms, and the grid Lipschitz estimate of
// the realization. The norm columns carry the story — the distances shrink
// while the norms refuse to stay bounded.
inline std::vector<SequenceRow> sequence_report(const WitnessSequence& ws) {
    std::vector<SequenceRow> rows;
    rows.reserve(ws.indices.size());
    for (std::size_t i = 0; i < ws.indices.size(); ++i) {
        const Network& net = ws.networks[i];
        const RealFn f = realization_fn(net, ws.act);
        const double dist = ws.mode == ConvergenceMode::uniform
                                ? sup_distance(f, ws.limit, ws.domain)
                                : lp_distance(f, ws.limit, ws.p, ws.domain, ws.quad_exclude);
        rows.push_back({ws.indices[i], dist, norm_total(net), norm_scaling(net),
                        empirical_lipschitz(f, ws.domain)});
    }
    return rows;
}

// Shortest exact decimal form of a double (17 significant digits always
// round-trip; %.17g keeps the files diffable across runs).
inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline constexpr const char* kSequenceCsvHeader = "n,distance,norm_total,norm_scaling,empirical_lipschitz";

inline std::string to_csv(const std::vector<SequenceRow>& rows) {
    std::string out = kSequenceCsvHeader;
    out += '\n';
    for (const SequenceRow& r : rows) {
        out += std::to_string(r.n);
        out += ',';
        out += format_double(r.distance);
        out += ',';
        out += format_double(r.norm_total);
        out += ',';
        out += format_double(r.norm_scaling);
        out += ',';
        out += format_double(r.empirical_lipschitz);
        out += '\n';
    }
    return out;
}

}  // namespace netspace

#endif  // NETSPACE_REPORT_HPP
