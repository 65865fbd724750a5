// SPDX-License-Identifier: Apache-2.0
//
// jpta-beam: frequency-dependent 3D beam design for joint phase-time arrays
// Copyright (C) 2026 The jpta-beam authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "jpta/config.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace jpta
{

using nlohmann::json;

const std::vector<std::string> &known_solvers()
{
    static const std::vector<std::string> names{"joint-ls",     "joint-minimax", "sep-ls",  "sep-minimax",
                                                "greedy-joint", "greedy-sep",    "gd-joint", "gd-sep"};
    return names;
}

namespace
{

std::string partition_name(PartitionRule rule)
{
    return rule == PartitionRule::cumulative_floor ? "cumulative-floor" : "per-user-floor";
}

[[noreturn]] void bad(const std::string &key, const std::string &what)
{
    throw std::invalid_argument("config: " + key + ": " + what);
}

void check_keys(const json &node, const std::string &prefix, const std::set<std::string> &allowed)
{
    if (!node.is_object())
        bad(prefix.empty() ? "<root>" : prefix, "expected a table");
    for (const auto &item : node.items())
        if (!allowed.contains(item.key()))
            bad(prefix.empty() ? item.key() : prefix + "." + item.key(), "unknown key");
}

double get_number(const json &node, const std::string &key)
{
    if (!node.is_number())
        bad(key, "expected a number");
    return node.get<double>();
}

std::size_t get_count(const json &node, const std::string &key)
{
    if (!node.is_number_integer() || node.get<long long>() < 0)
        bad(key, "expected a non-negative integer");
    return node.get<std::size_t>();
}

std::vector<double> get_numbers(const json &node, const std::string &key)
{
    if (!node.is_array())
        bad(key, "expected an array of numbers");
    std::vector<double> out;
    for (const auto &x : node)
        out.push_back(get_number(x, key));
    return out;
}

std::string get_string(const json &node, const std::string &key)
{
    if (!node.is_string())
        bad(key, "expected a string");
    return node.get<std::string>();
}

bool get_bool(const json &node, const std::string &key)
{
    if (!node.is_boolean())
        bad(key, "expected true or false");
    return node.get<bool>();
}

// Accepts [az, el] pairs or {az = .., el = ..} tables.
Direction get_direction(const json &node, const std::string &key)
{
    try
    {
        if (node.is_array() && node.size() == 2)
            return {get_number(node[0], key), get_number(node[1], key)};
        if (node.is_object())
        {
            check_keys(node, key, {"az", "el"});
            if (!node.contains("az") || !node.contains("el"))
                bad(key, "direction needs az and el");
            return {get_number(node["az"], key + ".az"), get_number(node["el"], key + ".el")};
        }
    }
    catch (const std::invalid_argument &e)
    {
        const std::string msg = e.what();
        if (msg.rfind("config:", 0) == 0)
            throw;
        bad(key, msg);
    }
    bad(key, "expected [az_deg, el_deg]");
}

} // namespace

void ExperimentConfig::validate() const
{
    try
    {
        (void)geometry();
    }
    catch (const std::invalid_argument &e)
    {
        bad("array", e.what());
    }
    try
    {
        (void)grid();
    }
    catch (const std::invalid_argument &e)
    {
        bad("grid", e.what());
    }
    if (solvers.empty())
        bad("solvers", "at least one solver is required");
    for (const auto &s : solvers)
    {
        bool ok = false;
        for (const auto &k : known_solvers())
            ok = ok || k == s;
        if (!ok)
        {
            std::string list;
            for (const auto &k : known_solvers())
                list += (list.empty() ? "" : ", ") + k;
            bad("solvers", "unknown solver '" + s + "' (valid: " + list + ")");
        }
    }
    if (directions.empty() && n_users == 0 && sweep_users.empty())
        bad("users.count", "must be at least 1");
    if (!directions.empty() && !sweep_users.empty())
        bad("sweep.n_users", "cannot be combined with explicit users.directions");
    if (!sweep_alphas.empty() && !sweep_users.empty())
        bad("sweep", "choose either alphas or n_users, not both");
    for (std::size_t n : sweep_users)
        if (n == 0)
            bad("sweep.n_users", "user counts must be at least 1");
    try
    {
        quantization.validate();
    }
    catch (const std::invalid_argument &e)
    {
        bad("quantization", e.what());
    }
    try
    {
        optimizer.validate();
    }
    catch (const std::invalid_argument &e)
    {
        bad("optimizer", e.what());
    }
    if (workers == 0)
        bad("run.workers", "must be at least 1");
    if (output_dir.empty())
        bad("output.dir", "must not be empty");
}

json to_json(const ExperimentConfig &c)
{
    json dirs = json::array();
    for (const auto &d : c.directions)
        dirs.push_back({d.az_deg(), d.el_deg()});
    return json{
        {"array", {{"n_az", c.n_az}, {"n_el", c.n_el}}},
        {"grid", {{"f_c", c.f_c}, {"delta_f", c.delta_f}, {"m_count", c.m_count}}},
        {"users",
         {{"count", c.n_users},
          {"directions", dirs},
          {"alphas", c.alphas},
          {"partition", partition_name(c.partition)}}},
        {"solvers", c.solvers},
        {"quantization",
         {{"tau_step", c.quantization.tau_step},
          {"tau_max", c.quantization.tau_max},
          {"phase_bits", c.quantization.phase_bits},
          {"analytic", c.quantize_analytic}}},
        {"optimizer",
         {{"zeta", c.optimizer.zeta},
          {"max_sweeps", c.optimizer.max_sweeps},
          {"learning_rate", c.optimizer.learning_rate},
          {"beta1", c.optimizer.beta1},
          {"beta2", c.optimizer.beta2},
          {"epsilon", c.optimizer.epsilon},
          {"gd_max_steps", c.optimizer.gd_max_steps},
          {"gd_window", c.optimizer.gd_window},
          {"seed", c.optimizer.seed}}},
        {"sweep", {{"alphas", c.sweep_alphas}, {"n_users", c.sweep_users}}},
        {"output", {{"dir", c.output_dir}}},
        {"run", {{"workers", c.workers}}},
    };
}

ExperimentConfig config_from_json(const json &tree)
{
    ExperimentConfig c;
    check_keys(tree, "", {"array", "grid", "users", "solvers", "quantization", "optimizer", "sweep", "output", "run"});

    if (tree.contains("array"))
    {
        const auto &t = tree["array"];
        check_keys(t, "array", {"n_az", "n_el"});
        if (t.contains("n_az"))
            c.n_az = get_count(t["n_az"], "array.n_az");
        if (t.contains("n_el"))
            c.n_el = get_count(t["n_el"], "array.n_el");
    }
    if (tree.contains("grid"))
    {
        const auto &t = tree["grid"];
        check_keys(t, "grid", {"f_c", "delta_f", "m_count"});
        if (t.contains("f_c"))
            c.f_c = get_number(t["f_c"], "grid.f_c");
        if (t.contains("delta_f"))
            c.delta_f = get_number(t["delta_f"], "grid.delta_f");
        if (t.contains("m_count"))
            c.m_count = get_count(t["m_count"], "grid.m_count");
    }
    if (tree.contains("users"))
    {
        const auto &t = tree["users"];
        check_keys(t, "users", {"count", "directions", "alphas", "partition"});
        if (t.contains("count"))
            c.n_users = get_count(t["count"], "users.count");
        if (t.contains("directions"))
        {
            if (!t["directions"].is_array())
                bad("users.directions", "expected an array of [az_deg, el_deg] pairs");
            for (std::size_t i = 0; i < t["directions"].size(); ++i)
                c.directions.push_back(
                    get_direction(t["directions"][i], "users.directions[" + std::to_string(i) + "]"));
        }
        if (t.contains("alphas"))
            c.alphas = get_numbers(t["alphas"], "users.alphas");
        if (t.contains("partition"))
        {
            const auto name = get_string(t["partition"], "users.partition");
            if (name == "cumulative-floor")
                c.partition = PartitionRule::cumulative_floor;
            else if (name == "per-user-floor")
                c.partition = PartitionRule::per_user_floor;
            else
                bad("users.partition", "expected cumulative-floor or per-user-floor, got '" + name + "'");
        }
    }
    if (tree.contains("solvers"))
    {
        const auto &t = tree["solvers"];
        c.solvers.clear();
        if (t.is_string())
            c.solvers.push_back(t.get<std::string>());
        else if (t.is_array())
            for (const auto &s : t)
                c.solvers.push_back(get_string(s, "solvers"));
        else
            bad("solvers", "expected a solver name or a list of names");
    }
    if (tree.contains("quantization"))
    {
        const auto &t = tree["quantization"];
        check_keys(t, "quantization", {"tau_step", "tau_max", "phase_bits", "analytic"});
        if (t.contains("tau_step"))
            c.quantization.tau_step = get_number(t["tau_step"], "quantization.tau_step");
        if (t.contains("tau_max"))
            c.quantization.tau_max = get_number(t["tau_max"], "quantization.tau_max");
        if (t.contains("phase_bits"))
            c.quantization.phase_bits = static_cast<int>(get_count(t["phase_bits"], "quantization.phase_bits"));
        if (t.contains("analytic"))
            c.quantize_analytic = get_bool(t["analytic"], "quantization.analytic");
    }
    if (tree.contains("optimizer"))
    {
        const auto &t = tree["optimizer"];
        check_keys(t, "optimizer",
                   {"zeta", "max_sweeps", "learning_rate", "beta1", "beta2", "epsilon", "gd_max_steps", "gd_window",
                    "seed"});
        auto &o = c.optimizer;
        if (t.contains("zeta"))
            o.zeta = get_number(t["zeta"], "optimizer.zeta");
        if (t.contains("max_sweeps"))
            o.max_sweeps = get_count(t["max_sweeps"], "optimizer.max_sweeps");
        if (t.contains("learning_rate"))
            o.learning_rate = get_number(t["learning_rate"], "optimizer.learning_rate");
        if (t.contains("beta1"))
            o.beta1 = get_number(t["beta1"], "optimizer.beta1");
        if (t.contains("beta2"))
            o.beta2 = get_number(t["beta2"], "optimizer.beta2");
        if (t.contains("epsilon"))
            o.epsilon = get_number(t["epsilon"], "optimizer.epsilon");
        if (t.contains("gd_max_steps"))
            o.gd_max_steps = get_count(t["gd_max_steps"], "optimizer.gd_max_steps");
        if (t.contains("gd_window"))
            o.gd_window = get_count(t["gd_window"], "optimizer.gd_window");
        if (t.contains("seed"))
            o.seed = get_count(t["seed"], "optimizer.seed");
    }
    if (tree.contains("sweep"))
    {
        const auto &t = tree["sweep"];
        check_keys(t, "sweep", {"alphas", "n_users"});
        if (t.contains("alphas"))
        {
            if (!t["alphas"].is_array())
                bad("sweep.alphas", "expected an array of alpha vectors");
            for (std::size_t i = 0; i < t["alphas"].size(); ++i)
                c.sweep_alphas.push_back(get_numbers(t["alphas"][i], "sweep.alphas[" + std::to_string(i) + "]"));
        }
        if (t.contains("n_users"))
        {
            if (!t["n_users"].is_array())
                bad("sweep.n_users", "expected an array of user counts");
            for (const auto &n : t["n_users"])
                c.sweep_users.push_back(get_count(n, "sweep.n_users"));
        }
    }
    if (tree.contains("output"))
    {
        const auto &t = tree["output"];
        check_keys(t, "output", {"dir"});
        if (t.contains("dir"))
            c.output_dir = get_string(t["dir"], "output.dir");
    }
    if (tree.contains("run"))
    {
        const auto &t = tree["run"];
        check_keys(t, "run", {"workers"});
        if (t.contains("workers"))
            c.workers = get_count(t["workers"], "run.workers");
    }
    c.validate();
    return c;
}

json read_config_tree(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    const bool is_toml = path.size() >= 5 && path.compare(path.size() - 5, 5, ".toml") == 0;
    try
    {
        return is_toml ? parse_toml(text) : json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw std::invalid_argument("config: " + path + ": " + e.what());
    }
}

void apply_override(json &tree, const std::string &assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0)
        throw std::invalid_argument("override '" + assignment + "': expected key=value");
    const std::string key = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);

    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded())
        value = raw;

    json *node = &tree;
    std::size_t start = 0;
    while (true)
    {
        const auto dot = key.find('.', start);
        const std::string part = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty())
            throw std::invalid_argument("override '" + assignment + "': malformed key");
        if (!node->is_object())
            *node = json::object();
        if (dot == std::string::npos)
        {
            (*node)[part] = value;
            break;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

ExperimentConfig load_config(const std::string &path, const std::vector<std::string> &overrides)
{
    json tree = read_config_tree(path);
    for (const auto &o : overrides)
        apply_override(tree, o);
    ExperimentConfig c = config_from_json(tree);
    if (const char *env = std::getenv(output_dir_env); env != nullptr && *env != '\0')
        c.output_dir = env;
    return c;
}

std::string config_digest(const ExperimentConfig &config)
{
    json tree = to_json(config);
    tree.erase("output");
    tree.erase("run");
    const std::string text = tree.dump();
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : text)
    {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace jpta
