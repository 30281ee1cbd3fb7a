#include "helmrec/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "helmrec/cases.hpp"

namespace helmrec {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects a number, got '" + value + "'");
    }
}

long long parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' expects an integer, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("config: key '" + key + "' expects true/false, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void apply_key(ExperimentConfig& cfg, const std::string& section, const std::string& key,
               const std::string& value) {
    const std::string qualified = section + "." + key;
    if (section == "problem") {
        if (key == "case") cfg.case_name = value;
        else if (key == "formulation") cfg.formulation = value;
        else if (key == "mesh_n") cfg.mesh_n = static_cast<int>(parse_int(qualified, value));
        else if (key == "degree") cfg.degree = static_cast<int>(parse_int(qualified, value));
        else if (key == "basis") cfg.basis = value;
        else if (key == "alpha") { cfg.alpha = parse_double(qualified, value); cfg.alpha_explicit = true; }
        else if (key == "regularizer") cfg.regularizer = value;
        else throw ConfigError("config: unknown key '" + qualified + "'");
    } else if (section == "pso") {
        if (key == "swarm") cfg.pso.swarm_size = static_cast<int>(parse_int(qualified, value));
        else if (key == "c1") cfg.pso.c1 = parse_double(qualified, value);
        else if (key == "c2") cfg.pso.c2 = parse_double(qualified, value);
        else if (key == "omega") cfg.pso.omega = parse_double(qualified, value);
        else if (key == "max_iter") cfg.pso.max_iter = static_cast<int>(parse_int(qualified, value));
        else if (key == "lb") cfg.pso.lb = parse_double(qualified, value);
        else if (key == "ub") cfg.pso.ub = parse_double(qualified, value);
        else if (key == "tolerance") cfg.pso.tolerance = parse_double(qualified, value);
        else if (key == "seed") cfg.pso.seed = static_cast<std::uint64_t>(parse_int(qualified, value));
        else if (key == "per_component_random") cfg.pso.per_component_random = parse_bool(qualified, value);
        else throw ConfigError("config: unknown key '" + qualified + "'");
    } else if (section == "noise") {
        if (key == "levels") {
            cfg.noise_levels.clear();
            for (const auto& item : split_list(value)) cfg.noise_levels.push_back(parse_double(qualified, item));
        } else if (key == "seeds") {
            cfg.noise_seeds.clear();
            for (const auto& item : split_list(value)) {
                cfg.noise_seeds.push_back(static_cast<std::uint64_t>(parse_int(qualified, item)));
            }
        } else {
            throw ConfigError("config: unknown key '" + qualified + "'");
        }
    } else if (section == "sweep") {
        if (key == "etas") {
            cfg.etas.clear();
            for (const auto& item : split_list(value)) cfg.etas.push_back(parse_double(qualified, item));
        } else {
            throw ConfigError("config: unknown key '" + qualified + "'");
        }
    } else if (section == "output") {
        if (key == "dir") cfg.out_dir = value;
        else throw ConfigError("config: unknown key '" + qualified + "'");
    } else {
        throw ConfigError("config: unknown section '[" + section + "]'");
    }
}

}  // namespace

int ExperimentConfig::effective_mesh_n() const {
    if (mesh_n > 0) return mesh_n;
    return default_mesh_n(case_name == "disc" ? CaseName::Disc : CaseName::Square);
}

void ExperimentConfig::validate() const {
    if (case_name != "square" && case_name != "disc") {
        throw ConfigError("config: problem.case must be 'square' or 'disc', got '" + case_name + "'");
    }
    if (formulation != "dirichlet" && formulation != "neumann") {
        throw ConfigError("config: problem.formulation must be 'dirichlet' or 'neumann'");
    }
    if (basis != "chebyshev" && basis != "monomial") {
        throw ConfigError("config: problem.basis must be 'chebyshev' or 'monomial'");
    }
    if (regularizer != "l2" && regularizer != "l2h1") {
        throw ConfigError("config: problem.regularizer must be 'l2' or 'l2h1'");
    }
    if (mesh_n != 0) {
        if (case_name == "square" && mesh_n < 2) throw ConfigError("config: problem.mesh_n must be >= 2");
        if (case_name == "disc" && (mesh_n < 16 || mesh_n % 4 != 0)) {
            throw ConfigError("config: problem.mesh_n must be >= 16 and divisible by 4 for the disc");
        }
    }
    if (degree < 0 || degree > 12) throw ConfigError("config: problem.degree must be in [0, 12]");
    if (alpha < 0.0) throw ConfigError("config: problem.alpha must be >= 0");
    if (pso.swarm_size < 1) throw ConfigError("config: pso.swarm must be >= 1");
    if (pso.max_iter < 1) throw ConfigError("config: pso.max_iter must be >= 1");
    if (!(pso.lb < pso.ub)) throw ConfigError("config: pso.lb must be < pso.ub");
    if (pso.tolerance < 0.0) throw ConfigError("config: pso.tolerance must be >= 0");
    for (double nu : noise_levels) {
        if (nu < 0.0) throw ConfigError("config: noise.levels must be >= 0");
    }
    if (noise_seeds.empty()) throw ConfigError("config: noise.seeds must not be empty");
    if (etas.empty()) throw ConfigError("config: sweep.etas must not be empty");
    if (threads < 1) throw ConfigError("config: threads must be >= 1");
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::stringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("config: malformed section header at line " + std::to_string(line_no));
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: expected 'key = value' at line " + std::to_string(line_no));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) {
            throw ConfigError("config: key '" + key + "' appears before any [section]");
        }
        if (key.empty() || value.empty()) {
            throw ConfigError("config: empty key or value at line " + std::to_string(line_no));
        }
        apply_key(cfg, section, key, value);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

std::vector<std::pair<std::string, std::string>> effective_config(const ExperimentConfig& config) {
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("problem.case", config.case_name);
    kv.emplace_back("problem.formulation", config.formulation);
    kv.emplace_back("problem.mesh_n", std::to_string(config.effective_mesh_n()));
    kv.emplace_back("problem.degree", std::to_string(config.degree));
    kv.emplace_back("problem.basis", config.basis);
    kv.emplace_back("problem.alpha", fmt(config.alpha));
    kv.emplace_back("problem.regularizer", config.regularizer);
    kv.emplace_back("pso.swarm", std::to_string(config.pso.swarm_size));
    kv.emplace_back("pso.c1", fmt(config.pso.c1));
    kv.emplace_back("pso.c2", fmt(config.pso.c2));
    kv.emplace_back("pso.omega", fmt(config.pso.omega));
    kv.emplace_back("pso.max_iter", std::to_string(config.pso.max_iter));
    kv.emplace_back("pso.lb", fmt(config.pso.lb));
    kv.emplace_back("pso.ub", fmt(config.pso.ub));
    kv.emplace_back("pso.tolerance", fmt(config.pso.tolerance));
    kv.emplace_back("pso.seed", std::to_string(config.pso.seed));
    kv.emplace_back("pso.per_component_random", config.pso.per_component_random ? "true" : "false");
    {
        std::string levels, seeds, etas;
        for (std::size_t i = 0; i < config.noise_levels.size(); ++i) {
            levels += (i ? "," : "") + fmt(config.noise_levels[i]);
        }
        for (std::size_t i = 0; i < config.noise_seeds.size(); ++i) {
            seeds += (i ? "," : "") + std::to_string(config.noise_seeds[i]);
        }
        for (std::size_t i = 0; i < config.etas.size(); ++i) {
            etas += (i ? "," : "") + fmt(config.etas[i]);
        }
        kv.emplace_back("noise.levels", levels);
        kv.emplace_back("noise.seeds", seeds);
        kv.emplace_back("sweep.etas", etas);
    }
    kv.emplace_back("output.dir", config.out_dir);
    kv.emplace_back("threads", std::to_string(config.threads));
    return kv;
}

}  // namespace helmrec
