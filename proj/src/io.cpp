#include "bifree/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace bifree {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double x = 0.0;
    try {
        x = std::stod(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("bad numeric value for " + key + ": '" + value + "'");
    }
    if (used != value.size())
        throw ConfigError("trailing garbage in " + key + ": '" + value + "'");
    return x;
}

int parse_int(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    int x = 0;
    try {
        x = std::stoi(value, &used);
    } catch (const std::exception&) {
        throw ConfigError("bad integer value for " + key + ": '" + value + "'");
    }
    if (used != value.size())
        throw ConfigError("trailing garbage in " + key + ": '" + value + "'");
    return x;
}

}  // namespace

bool RunConfig::valid(std::string* why) const {
    auto fail = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };
    if (!model.valid()) return fail("model violates Cauchy-Schwarz or norms");
    if (depth < 2 || depth > 16) return fail("depth outside [2,16]");
    if (n_gamma < 3 || n_gamma > 4096) return fail("n_gamma outside [3,4096]");
    if (n_delta < 3 || n_delta > 4096) return fail("n_delta outside [3,4096]");
    if (format != "csv" && format != "json")
        return fail("format must be csv or json");
    return true;
}

void apply_key(RunConfig& rc, const std::string& key,
               const std::string& value) {
    if (key == "norm1")
        rc.model.norm1 = parse_double(key, value);
    else if (key == "norm2")
        rc.model.norm2 = parse_double(key, value);
    else if (key == "alpha_re")
        rc.model.alpha = cplx(parse_double(key, value), rc.model.alpha.imag());
    else if (key == "alpha_im")
        rc.model.alpha = cplx(rc.model.alpha.real(), parse_double(key, value));
    else if (key == "depth")
        rc.depth = parse_int(key, value);
    else if (key == "n_gamma")
        rc.n_gamma = parse_int(key, value);
    else if (key == "n_delta")
        rc.n_delta = parse_int(key, value);
    else if (key == "format")
        rc.format = value;
    else
        throw ConfigError("unknown config key: '" + key + "'");
}

RunConfig read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path);
    RunConfig rc;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) +
                              ": expected key=value");
        apply_key(rc, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return rc;
}

void write_csv(const PrincipalGrid& g, std::ostream& os) {
    os << "gamma,delta,g\n";
    char buf[128];
    const int nd = g.n_delta();
    for (int ig = 0; ig < g.n_gamma(); ++ig)
        for (int id = 0; id < nd; ++id) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n",
                          g.gamma_axis[ig], g.delta_axis[id], g.at(ig, id));
            os << buf;
        }
    if (!os) throw IoError("write failed while emitting CSV");
}

nlohmann::json grid_to_json(const PrincipalGrid& g) {
    return nlohmann::json{
        {"config",
         {{"norm1", g.config.norm1},
          {"norm2", g.config.norm2},
          {"alpha_re", g.config.alpha.real()},
          {"alpha_im", g.config.alpha.imag()}}},
        {"n_gamma", g.n_gamma()},
        {"n_delta", g.n_delta()},
        {"gamma_axis", g.gamma_axis},
        {"delta_axis", g.delta_axis},
        {"values", g.values},
        {"min_value", g.min_value},
        {"max_value", g.max_value},
        {"argmax_gamma", g.argmax_gamma},
        {"argmax_delta", g.argmax_delta},
    };
}

PrincipalGrid grid_from_json(const nlohmann::json& j) {
    try {
        PrincipalGrid g;
        const auto& c = j.at("config");
        g.config.norm1 = c.at("norm1").get<double>();
        g.config.norm2 = c.at("norm2").get<double>();
        g.config.alpha =
            cplx(c.at("alpha_re").get<double>(), c.at("alpha_im").get<double>());
        g.gamma_axis = j.at("gamma_axis").get<std::vector<double>>();
        g.delta_axis = j.at("delta_axis").get<std::vector<double>>();
        g.values = j.at("values").get<std::vector<double>>();
        g.min_value = j.at("min_value").get<double>();
        g.max_value = j.at("max_value").get<double>();
        g.argmax_gamma = j.at("argmax_gamma").get<int>();
        g.argmax_delta = j.at("argmax_delta").get<int>();
        if (g.values.size() !=
            g.gamma_axis.size() * g.delta_axis.size())
            throw ConfigError("grid json: values length mismatch");
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("grid json: ") + e.what());
    }
}

}  // namespace bifree
