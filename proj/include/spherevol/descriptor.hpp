#pragma once

// Field descriptor files: a small JSON schema the CLI ingests.
//
//   {"kind": "spin", "k": 4}
//   {"kind": "north_south"}
//   {"kind": "grid", "n_alpha": 64, "n_beta": 64, "theta": [[...], ...]}
//   {"kind": "grid", "n_alpha": 64, "n_beta": 64, "theta_csv": "theta.csv"}
//   {"kind": "perturbed", "base": {...},
//    "bump": {"amplitude": 0.3, "center": {"alpha": 0.0, "beta": 3.14}, "width": 0.5}}
//   {"kind": "perturbed", "base": {...}, "bump": "random"}
//
// A CSV theta payload is n_alpha rows of n_beta comma-separated radians,
// resolved relative to the descriptor file. "random" bumps draw from the
// seed passed on the command line.

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spherevol/fields.hpp"

namespace spherevol {

class DescriptorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<double> read_theta_csv(const std::filesystem::path& path, int n_alpha,
                                          int n_beta) {
    std::ifstream in(path);
    if (!in) throw DescriptorError("cannot open theta CSV: " + path.string());
    std::vector<double> values;
    values.reserve(static_cast<size_t>(n_alpha) * n_beta);
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++row;
        std::istringstream ls(line);
        std::string cell;
        int col = 0;
        while (std::getline(ls, cell, ',')) {
            ++col;
            try {
                values.push_back(std::stod(cell));
            } catch (const std::exception&) {
                throw DescriptorError("theta CSV row " + std::to_string(row) + ", column " +
                                      std::to_string(col) + ": not a number");
            }
        }
        if (col != n_beta)
            throw DescriptorError("theta CSV row " + std::to_string(row) + ": expected " +
                                  std::to_string(n_beta) + " columns, got " + std::to_string(col));
    }
    if (row != n_alpha)
        throw DescriptorError("theta CSV: expected " + std::to_string(n_alpha) + " rows, got " +
                              std::to_string(row));
    return values;
}

inline UnitField parse_field(const nlohmann::json& j, const std::filesystem::path& base_dir,
                             std::optional<unsigned> seed) {
    if (!j.is_object() || !j.contains("kind"))
        throw DescriptorError("descriptor: expected an object with a \"kind\" key");
    const std::string kind = j.at("kind").get<std::string>();

    if (kind == "spin") {
        if (!j.contains("k")) throw DescriptorError("spin descriptor: missing \"k\"");
        return UnitField::spin(j.at("k").get<int>());
    }
    if (kind == "north_south") {
        return UnitField::north_south();
    }
    if (kind == "grid") {
        const int na = j.at("n_alpha").get<int>();
        const int nb = j.at("n_beta").get<int>();
        std::vector<double> theta;
        if (j.contains("theta")) {
            const auto& rows = j.at("theta");
            if (!rows.is_array() || static_cast<int>(rows.size()) != na)
                throw DescriptorError("grid descriptor: theta must have n_alpha rows");
            for (const auto& r : rows) {
                if (!r.is_array() || static_cast<int>(r.size()) != nb)
                    throw DescriptorError("grid descriptor: each theta row needs n_beta values");
                for (const auto& v : r) theta.push_back(v.get<double>());
            }
        } else if (j.contains("theta_csv")) {
            theta = read_theta_csv(base_dir / j.at("theta_csv").get<std::string>(), na, nb);
        } else {
            throw DescriptorError("grid descriptor: needs \"theta\" or \"theta_csv\"");
        }
        return UnitField::grid(GridField(na, nb, std::move(theta)));
    }
    if (kind == "perturbed") {
        UnitField base = parse_field(j.at("base"), base_dir, seed);
        const auto& bj = j.at("bump");
        if (bj.is_string() && bj.get<std::string>() == "random") {
            std::mt19937 rng(seed.value_or(0));
            return perturb(std::move(base), random_bump(rng));
        }
        const auto& c = bj.at("center");
        BumpSpec bump{bj.at("amplitude").get<double>(),
                      SphericalPoint(c.at("alpha").get<double>(), c.at("beta").get<double>()),
                      bj.at("width").get<double>()};
        return perturb(std::move(base), bump);
    }
    throw DescriptorError("descriptor: unknown kind \"" + kind + "\"");
}

} // namespace detail

inline UnitField parse_descriptor(const std::string& text,
                                  const std::filesystem::path& base_dir = ".",
                                  std::optional<unsigned> seed = {}) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DescriptorError(e.what()); // message carries the byte position
    }
    try {
        return detail::parse_field(j, base_dir, seed);
    } catch (const nlohmann::json::exception& e) {
        throw DescriptorError(std::string("descriptor: ") + e.what());
    } catch (const DomainError& e) {
        throw DescriptorError(std::string("descriptor: ") + e.what());
    }
}

inline UnitField load_descriptor(const std::filesystem::path& path,
                                 std::optional<unsigned> seed = {}) {
    std::ifstream in(path);
    if (!in) throw DescriptorError("cannot open descriptor: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_descriptor(buf.str(), path.parent_path(), seed);
}

} // namespace spherevol
