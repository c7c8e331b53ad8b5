#include "hnla/json_io.hpp"

#include <stdexcept>

namespace {

nlohmann::json complex_pair(const hnla::complexd &c) {
    return nlohmann::json::array({c.real(), c.imag()});
}

hnla::complexd parse_complex(const nlohmann::json &j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("json: complex values must be [re, im] pairs");
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

} // namespace

namespace hnla::fock {

void to_json(nlohmann::json &j, const FockVector &v) {
    j = nlohmann::json{{"n_max", v.n_max()}, {"amps", nlohmann::json::array()}};
    for (const complexd &c : v.amps)
        j["amps"].push_back(complex_pair(c));
}

void from_json(const nlohmann::json &j, FockVector &v) {
    const auto &amps = j.at("amps");
    v.amps.clear();
    v.amps.reserve(amps.size());
    for (const auto &entry : amps)
        v.amps.push_back(parse_complex(entry));
    if (j.at("n_max").get<int>() != v.n_max())
        throw std::invalid_argument("json: FockVector n_max disagrees with amps length");
}

void to_json(nlohmann::json &j, const DensityMatrix &m) {
    j = nlohmann::json{{"n_max", m.n_max()}, {"elems", nlohmann::json::array()}};
    for (Eigen::Index row = 0; row < m.elems.rows(); ++row) {
        nlohmann::json r = nlohmann::json::array();
        for (Eigen::Index col = 0; col < m.elems.cols(); ++col)
            r.push_back(complex_pair(m.elems(row, col)));
        j["elems"].push_back(std::move(r));
    }
}

void from_json(const nlohmann::json &j, DensityMatrix &m) {
    const auto &rows = j.at("elems");
    const auto dim = static_cast<Eigen::Index>(rows.size());
    m.elems.resize(dim, dim);
    for (Eigen::Index row = 0; row < dim; ++row) {
        const auto &r = rows.at(static_cast<size_t>(row));
        if (static_cast<Eigen::Index>(r.size()) != dim)
            throw std::invalid_argument("json: DensityMatrix elems must be square");
        for (Eigen::Index col = 0; col < dim; ++col)
            m.elems(row, col) = parse_complex(r.at(static_cast<size_t>(col)));
    }
    if (j.at("n_max").get<int>() != m.n_max())
        throw std::invalid_argument("json: DensityMatrix n_max disagrees with elems size");
}

} // namespace hnla::fock

namespace hnla::ensemble {

void to_json(nlohmann::json &j, const GridSpec &g) {
    j = nlohmann::json{{"kind", to_string(g.kind)},
                       {"points", g.points},
                       {"angular_points", g.angular_points},
                       {"sigmas", g.sigmas}};
}

void from_json(const nlohmann::json &j, GridSpec &g) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "gauss-hermite")
        g.kind = GridKind::gauss_hermite;
    else if (kind == "uniform")
        g.kind = GridKind::uniform;
    else if (kind == "radial")
        g.kind = GridKind::radial;
    else
        throw std::invalid_argument("json: unknown grid kind '" + kind + "'");
    g.points = j.at("points").get<int>();
    g.angular_points = j.at("angular_points").get<int>();
    g.sigmas = j.at("sigmas").get<double>();
}

void to_json(nlohmann::json &j, const NoSignalReport &r) {
    j = nlohmann::json{{"s", r.s},
                       {"g", r.g},
                       {"s_prime", r.s_prime},
                       {"grid", r.grid},
                       {"n_max", r.n_max},
                       {"d_xp", r.d_xp},
                       {"d_x_thermal", r.d_x_thermal},
                       {"d_p_thermal", r.d_p_thermal},
                       {"identity_residual_max", r.identity_residual_max},
                       {"runtime_ms", r.runtime_ms}};
}

void from_json(const nlohmann::json &j, NoSignalReport &r) {
    j.at("s").get_to(r.s);
    j.at("g").get_to(r.g);
    j.at("s_prime").get_to(r.s_prime);
    j.at("grid").get_to(r.grid);
    j.at("n_max").get_to(r.n_max);
    j.at("d_xp").get_to(r.d_xp);
    j.at("d_x_thermal").get_to(r.d_x_thermal);
    j.at("d_p_thermal").get_to(r.d_p_thermal);
    j.at("identity_residual_max").get_to(r.identity_residual_max);
    j.at("runtime_ms").get_to(r.runtime_ms);
}

} // namespace hnla::ensemble
