#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "spectra/complex.hpp"

namespace spectra {

using ordered_json = nlohmann::ordered_json;

static void reject_unknown(const ordered_json& obj, std::initializer_list<const char*> allowed,
                           const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) throw std::invalid_argument("unknown field \"" + key + "\" in " + where);
    }
}

static mpz_class parse_coeff(const ordered_json& v) {
    if (v.is_number_integer()) return mpz_class(v.get<long>());
    if (v.is_string()) return mpz_class(v.get<std::string>());
    throw std::invalid_argument("coefficient must be an integer");
}

FilteredComplex parse_complex(const std::string& json_text) {
    ordered_json j = ordered_json::parse(json_text);
    if (!j.is_object()) throw std::invalid_argument("top level must be an object");
    reject_unknown(j, {"top_degree", "generators", "differential"}, "complex");
    if (!j.contains("top_degree") || !j["top_degree"].is_number_integer())
        throw std::invalid_argument("top_degree must be an integer");
    if (!j.contains("generators") || !j["generators"].is_array())
        throw std::invalid_argument("generators must be an array");

    std::vector<Generator> gens;
    for (const auto& g : j["generators"]) {
        if (!g.is_object()) throw std::invalid_argument("generator entries must be objects");
        reject_unknown(g, {"id", "degree", "action"}, "generator");
        if (!g.contains("id") || !g["id"].is_string())
            throw std::invalid_argument("generator id must be a string");
        if (!g.contains("degree") || !g["degree"].is_number_integer())
            throw std::invalid_argument("generator degree must be an integer");
        if (!g.contains("action")) throw std::invalid_argument("generator action is required");
        mpq_class action;
        if (g["action"].is_string())
            action = parse_rational(g["action"].get<std::string>());
        else if (g["action"].is_number_integer())
            action = mpq_class(g["action"].get<long>());
        else
            throw std::invalid_argument("action must be an exact rational string or integer");
        gens.push_back({g["id"].get<std::string>(), g["degree"].get<int>(), action});
    }

    std::vector<std::pair<std::string, std::vector<std::pair<std::string, mpz_class>>>> diff;
    if (j.contains("differential")) {
        if (!j["differential"].is_object())
            throw std::invalid_argument("differential must be an object");
        for (const auto& [src, terms] : j["differential"].items()) {
            if (!terms.is_array()) throw std::invalid_argument("differential entries must be arrays");
            std::vector<std::pair<std::string, mpz_class>> list;
            for (const auto& term : terms) {
                if (!term.is_array() || term.size() != 2 || !term[0].is_string())
                    throw std::invalid_argument("boundary terms must be [id, coefficient] pairs");
                list.emplace_back(term[0].get<std::string>(), parse_coeff(term[1]));
            }
            diff.emplace_back(src, std::move(list));
        }
    }
    return make_complex(j["top_degree"].get<int>(), std::move(gens), diff);
}

FilteredComplex load_complex(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_complex(ss.str());
}

std::string save_complex(const FilteredComplex& C) {
    ordered_json j;
    j["top_degree"] = C.top_degree;
    j["generators"] = ordered_json::array();
    for (const auto& g : C.generators) {
        ordered_json e;
        e["id"] = g.id;
        e["degree"] = g.degree;
        e["action"] = g.action.get_str();
        j["generators"].push_back(std::move(e));
    }
    j["differential"] = ordered_json::object();
    for (size_t i = 0; i < C.generators.size(); ++i) {
        if (C.boundary[i].empty()) continue;
        ordered_json terms = ordered_json::array();
        for (const auto& [t, c] : C.boundary[i]) {
            ordered_json term = ordered_json::array();
            term.push_back(C.generators[t].id);
            if (c.fits_slong_p())
                term.push_back(c.get_si());
            else
                term.push_back(c.get_str());
            terms.push_back(std::move(term));
        }
        j["differential"][C.generators[i].id] = std::move(terms);
    }
    return j.dump(2) + "\n";
}

void write_complex(const FilteredComplex& C, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << save_complex(C);
}

}  // namespace spectra
