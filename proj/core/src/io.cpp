#include "toeprank/io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "toeprank/errors.hpp"

namespace toeprank {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<std::string> string_list(const json& j, const std::string& what) {
    if (!j.is_array()) {
        throw ValidationError(what + " must be an array of strings");
    }
    std::vector<std::string> out;
    for (const auto& item : j) {
        if (!item.is_string()) {
            throw ValidationError(what + " must contain only strings");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

Index label_position(const std::vector<std::string>& labels, const std::string& label,
                     const std::string& what) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] == label) return static_cast<Index>(i);
    }
    throw ValidationError("unknown " + what + " label '" + label + "'");
}

} // namespace

LaurentPattern parse_pattern_text(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(origin + ": " + e.what());
    }

    try {
        if (!doc.is_object()) {
            throw ValidationError("top level must be an object");
        }
        for (const auto& [key, value] : doc.items()) {
            if (key != "rows" && key != "cols" && key != "coefficients") {
                throw ValidationError("unknown key '" + key + "'");
            }
        }
        if (!doc.contains("rows") || !doc.contains("cols") ||
            !doc.contains("coefficients")) {
            throw ValidationError("missing 'rows', 'cols', or 'coefficients'");
        }
        auto rows = string_list(doc["rows"], "'rows'");
        auto cols = string_list(doc["cols"], "'cols'");

        std::vector<Coefficient> coeffs;
        {
            if (!doc["coefficients"].is_array()) {
                throw ValidationError("'coefficients' must be an array");
            }
            for (const auto& cj : doc["coefficients"]) {
                if (!cj.is_object()) {
                    throw ValidationError("each coefficient must be an object");
                }
                for (const auto& [key, value] : cj.items()) {
                    if (key != "index" && key != "nonzeros") {
                        throw ValidationError("unknown coefficient key '" + key + "'");
                    }
                }
                if (!cj.contains("index") || !cj["index"].is_number_integer() ||
                    cj["index"].get<long long>() < 0) {
                    throw ValidationError("coefficient 'index' must be a nonnegative integer");
                }
                const long long index = cj["index"].get<long long>();
                if (index > INT32_MAX) {
                    throw ValidationError("coefficient index too large");
                }
                std::vector<Entry> nonzeros;
                if (cj.contains("nonzeros")) {
                    if (!cj["nonzeros"].is_array()) {
                        throw ValidationError("'nonzeros' must be an array");
                    }
                    for (const auto& nz : cj["nonzeros"]) {
                        if (!nz.is_array() || nz.size() != 2 || !nz[0].is_string() ||
                            !nz[1].is_string()) {
                            throw ValidationError(
                                "each nonzero must be a [row, col] pair of labels");
                        }
                        nonzeros.push_back(
                            {label_position(rows, nz[0].get<std::string>(), "row"),
                             label_position(cols, nz[1].get<std::string>(), "column")});
                    }
                }
                coeffs.push_back({static_cast<int>(index),
                                  SupportMatrix(static_cast<Index>(rows.size()),
                                                static_cast<Index>(cols.size()),
                                                std::move(nonzeros))});
            }
        }
        return LaurentPattern(std::move(rows), std::move(cols), std::move(coeffs));
    } catch (const ValidationError& e) {
        throw ValidationError(origin + ": " + e.what());
    }
}

LaurentPattern load_pattern_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot read file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_pattern_text(buffer.str(), path);
}

std::string pattern_to_json_text(const LaurentPattern& h) {
    ordered_json doc;
    doc["rows"] = h.row_labels();
    doc["cols"] = h.col_labels();
    doc["coefficients"] = ordered_json::array();
    for (const Coefficient& c : h.coefficients()) {
        ordered_json cj;
        cj["index"] = c.index;
        cj["nonzeros"] = ordered_json::array();
        for (const Entry& e : c.support.nonzeros()) {
            cj["nonzeros"].push_back({h.row_labels()[e.row], h.col_labels()[e.col]});
        }
        doc["coefficients"].push_back(std::move(cj));
    }
    return doc.dump(2) + "\n";
}

} // namespace toeprank
