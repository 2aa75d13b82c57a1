#include "alloy/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "alloy/error.hpp"

namespace alloy {

namespace {

struct Ctx {
    std::string origin;

    [[noreturn]] void fail(const YAML::Node& n, const std::string& msg) const {
        std::ostringstream os;
        os << origin;
        if (n.IsDefined() && n.Mark().line >= 0) os << ":" << n.Mark().line + 1 << ":" << n.Mark().column + 1;
        os << ": " << msg;
        throw config_error(os.str());
    }

    void only_keys(const YAML::Node& n, const std::set<std::string>& allowed, const std::string& where) const {
        if (!n.IsMap()) fail(n, where + " must be a mapping");
        for (auto it = n.begin(); it != n.end(); ++it) {
            auto key = it->first.as<std::string>();
            if (!allowed.count(key)) fail(it->first, "unknown key '" + key + "' in " + where);
        }
    }

    template <class T>
    T get(const YAML::Node& n, const std::string& what) const {
        try {
            return n.as<T>();
        } catch (const YAML::Exception&) {
            fail(n, "bad value for " + what);
        }
    }

    Site site(const YAML::Node& n, int d) const {
        Site s;
        if (n.IsScalar()) {
            s.push_back(get<int>(n, "site"));
        } else if (n.IsSequence()) {
            for (auto c : n) s.push_back(get<int>(c, "site coordinate"));
        } else {
            fail(n, "site must be an integer or a list of integers");
        }
        if (static_cast<int>(s.size()) != d) fail(n, "site has the wrong dimension");
        return s;
    }
};

ModelFile parse_root(const YAML::Node& root, const Ctx& cx) {
    cx.only_keys(root, {"dimension", "lambda", "potential", "density", "seed"}, "model file");
    for (const char* k : {"dimension", "lambda", "potential", "density"})
        if (!root[k]) cx.fail(root, std::string("missing required key '") + k + "'");

    ModelFile mf;
    ModelConfig& m = mf.model;
    m.d = cx.get<int>(root["dimension"], "dimension");
    if (m.d < 1) cx.fail(root["dimension"], "dimension must be >= 1");
    m.lambda = cx.get<double>(root["lambda"], "lambda");

    const YAML::Node pot = root["potential"];
    cx.only_keys(pot, {"support", "tail"}, "potential");
    std::map<Site, double> core;
    if (pot["support"]) {
        const YAML::Node sup = pot["support"];
        if (!sup.IsSequence()) cx.fail(sup, "potential.support must be a list of [site, value]");
        for (auto entry : sup) {
            if (!entry.IsSequence() || entry.size() != 2) cx.fail(entry, "support entries are [site, value]");
            Site s = cx.site(entry[0], m.d);
            if (core.count(s)) cx.fail(entry, "site listed twice in potential.support");
            core[s] = cx.get<double>(entry[1], "support value");
        }
    }
    std::optional<Tail> tail;
    if (pot["tail"]) {
        const YAML::Node t = pot["tail"];
        cx.only_keys(t, {"C", "alpha", "radius", "alternating"}, "potential.tail");
        Tail tl;
        if (t["C"]) tl.C = cx.get<double>(t["C"], "tail C");
        if (t["alpha"]) tl.alpha = cx.get<double>(t["alpha"], "tail alpha");
        if (!t["radius"]) cx.fail(t, "potential.tail needs a radius");
        tl.radius = cx.get<int>(t["radius"], "tail radius");
        if (t["alternating"]) tl.alternating = cx.get<bool>(t["alternating"], "tail alternating");
        tail = tl;
    }
    try {
        m.u = SingleSitePotential(m.d, core, tail);
    } catch (const precondition_error& e) {
        cx.fail(pot, e.what());
    }

    const YAML::Node den = root["density"];
    cx.only_keys(den, {"kind", "params"}, "density");
    if (!den["kind"]) cx.fail(den, "density needs a kind");
    std::vector<double> params;
    if (den["params"]) {
        if (!den["params"].IsSequence()) cx.fail(den["params"], "density.params must be a list");
        for (auto p : den["params"]) params.push_back(cx.get<double>(p, "density parameter"));
    }
    try {
        m.rho = Density::from_spec(cx.get<std::string>(den["kind"], "density kind"), params);
    } catch (const precondition_error& e) {
        cx.fail(den, e.what());
    }

    if (root["seed"]) mf.seed = cx.get<std::uint64_t>(root["seed"], "seed");
    try {
        m.validate();
    } catch (const precondition_error& e) {
        cx.fail(root, e.what());
    }
    return mf;
}

}  // namespace

ModelFile parse_model(const std::string& text, const std::string& origin) {
    Ctx cx{origin};
    YAML::Node root;
    try {
        root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
        std::ostringstream os;
        os << origin << ":" << e.mark.line + 1 << ":" << e.mark.column + 1 << ": " << e.msg;
        throw config_error(os.str());
    }
    return parse_root(root, cx);
}

ModelFile load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error(path + ": cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str(), path);
}

}  // namespace alloy
