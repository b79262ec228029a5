#include "moll/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace moll {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_numbers(const std::string& key, const std::string& val) {
    std::vector<double> out;
    std::istringstream is(val);
    std::string tok;
    while (is >> tok) {
        try {
            std::size_t used = 0;
            double d = std::stod(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            out.push_back(d);
        } catch (const std::exception&) {
            throw ParseError(key + ": not a number: '" + tok + "'");
        }
    }
    return out;
}

double parse_one(const std::string& key, const std::string& val) {
    auto v = parse_numbers(key, val);
    if (v.size() != 1) throw ParseError(key + ": expected a single number");
    return v[0];
}

std::int64_t parse_int(const std::string& key, const std::string& val) {
    double d = parse_one(key, val);
    if (d != std::floor(d)) throw ParseError(key + ": expected an integer");
    return static_cast<std::int64_t>(d);
}

struct RawPoly {
    std::string basis = "monomial";
    std::vector<double> coeffs;
    bool seen = false;
};

Polynomial build_poly(const std::string& name, const RawPoly& rp) {
    if (rp.basis == "monomial") return Polynomial(rp.coeffs);
    if (rp.basis == "shifted") {
        if (name != "P1") throw ParseError(name + ".basis: 'shifted' is the P1 basis");
        return p1_from_shifted_basis(rp.coeffs);
    }
    if (rp.basis == "linear") {
        return pl_from_linear_basis(rp.coeffs);
    }
    if (rp.basis == "odd") {
        if (name != "Q") throw ParseError(name + ".basis: 'odd' is the Q basis");
        if (rp.coeffs.empty()) throw ParseError("Q.coeffs: empty");
        return q_from_odd_basis(rp.coeffs[0],
                                std::vector<double>(rp.coeffs.begin() + 1, rp.coeffs.end()));
    }
    throw ParseError(name + ".basis: unknown basis '" + rp.basis +
                     "' (monomial|shifted|linear|odd)");
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig rc;
    std::map<std::string, RawPoly> polys;
    std::map<std::string, std::string> kv;  // section.key -> value
    std::string section;

    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("line " + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (section.empty())
            throw ParseError(key + ": key outside any [section]");
        kv[section + "." + key] = val;
    }

    auto take = [&](const std::string& k) -> std::string* {
        auto it = kv.find(k);
        return it == kv.end() ? nullptr : &it->second;
    };

    // [params]
    if (auto* v = take("params.K")) rc.moll.K = static_cast<int>(parse_int("K", *v));
    if (auto* v = take("params.R")) rc.moll.R = parse_one("R", *v);
    if (auto* v = take("params.theta1")) rc.moll.theta1 = parse_one("theta1", *v);
    if (auto* v = take("params.theta2")) rc.moll.theta2 = parse_one("theta2", *v);
    if (auto* v = take("params.mode")) {
        if (*v == "kappa") rc.kappa_star = false;
        else if (*v == "kappa_star") rc.kappa_star = true;
        else throw ParseError("mode: expected kappa or kappa_star");
    }
    if (auto* v = take("params.c12_variant")) {
        if (*v == "ell_minus_1") rc.moll.c12_variant = C12Variant::ell_minus_1;
        else if (*v == "ell") rc.moll.c12_variant = C12Variant::ell;
        else throw ParseError("c12_variant: expected ell_minus_1 or ell");
    }

    // [polynomials]
    for (const auto& [k, v] : kv) {
        if (k.rfind("polynomials.", 0) != 0) continue;
        std::string rest = k.substr(std::string("polynomials.").size());
        std::size_t dot = rest.find('.');
        if (dot == std::string::npos)
            throw ParseError(rest + ": expected <name>.basis or <name>.coeffs");
        std::string name = rest.substr(0, dot), field = rest.substr(dot + 1);
        RawPoly& rp = polys[name];
        rp.seen = true;
        if (field == "basis") rp.basis = v;
        else if (field == "coeffs") rp.coeffs = parse_numbers(k, v);
        else throw ParseError(k + ": unknown polynomial field");
    }
    if (polys.count("P1")) rc.moll.P1 = build_poly("P1", polys["P1"]);
    if (polys.count("Q")) rc.moll.Q = build_poly("Q", polys["Q"]);
    rc.moll.Pl.clear();
    for (int l = 2; l <= rc.moll.K; ++l) {
        std::string name = "P" + std::to_string(l);
        if (polys.count(name)) {
            rc.moll.Pl.push_back(build_poly(name, polys[name]));
        } else {
            rc.moll.Pl.push_back(Polynomial{});  // P_l == 0
        }
    }

    // [optimize]
    rc.space.theta1 = rc.moll.theta1;
    rc.space.theta2 = rc.moll.theta2;
    rc.space.c12_variant = rc.moll.c12_variant;
    rc.space.kappa_star = rc.kappa_star;
    rc.space.pl_degrees.assign(static_cast<std::size_t>(rc.moll.K - 1), 2);
    if (auto* v = take("optimize.budget")) rc.budget = static_cast<int>(parse_int("budget", *v));
    if (auto* v = take("optimize.restarts")) rc.restarts = static_cast<int>(parse_int("restarts", *v));
    if (auto* v = take("optimize.seed")) rc.seed = static_cast<std::uint64_t>(parse_int("seed", *v));
    if (auto* v = take("optimize.r_min")) rc.space.r_min = parse_one("r_min", *v);
    if (auto* v = take("optimize.r_max")) rc.space.r_max = parse_one("r_max", *v);
    if (auto* v = take("optimize.p1_degree"))
        rc.space.p1_degree = static_cast<int>(parse_int("p1_degree", *v));
    if (auto* v = take("optimize.pl_degrees")) {
        auto nums = parse_numbers("pl_degrees", *v);
        rc.space.pl_degrees.clear();
        for (double d : nums) rc.space.pl_degrees.push_back(static_cast<int>(d));
    }
    if (auto* v = take("optimize.q_odd_terms"))
        rc.space.q_odd_terms = static_cast<int>(parse_int("q_odd_terms", *v));
    if (auto* v = take("optimize.warm_start")) {
        if (*v == "true") rc.warm_start = true;
        else if (*v == "false") rc.warm_start = false;
        else throw ParseError("warm_start: expected true or false");
    }
    if (rc.kappa_star) rc.space.q_odd_terms = 1;

    // [verify]
    if (auto* v = take("verify.suite")) rc.verify.suite = *v;
    if (auto* v = take("verify.limit")) rc.verify.limit = parse_int("limit", *v);

    return rc;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open config file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

namespace {
std::string fmt_coeffs(const std::vector<double>& c) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) os << ' ';
        os << c[i];
    }
    return os.str();
}
}  // namespace

std::string write_config(const RunConfig& rc) {
    std::ostringstream os;
    os.precision(17);
    os << "[params]\n";
    os << "K = " << rc.moll.K << "\n";
    os << "R = " << rc.moll.R << "\n";
    os << "theta1 = " << rc.moll.theta1 << "\n";
    os << "theta2 = " << rc.moll.theta2 << "\n";
    os << "mode = " << (rc.kappa_star ? "kappa_star" : "kappa") << "\n";
    os << "c12_variant = "
       << (rc.moll.c12_variant == C12Variant::ell_minus_1 ? "ell_minus_1" : "ell") << "\n\n";
    os << "[polynomials]\n";
    os << "P1.basis = monomial\nP1.coeffs = " << fmt_coeffs(rc.moll.P1.c) << "\n";
    for (std::size_t i = 0; i < rc.moll.Pl.size(); ++i) {
        std::string name = "P" + std::to_string(i + 2);
        os << name << ".basis = monomial\n"
           << name << ".coeffs = " << fmt_coeffs(rc.moll.Pl[i].c) << "\n";
    }
    os << "Q.basis = monomial\nQ.coeffs = " << fmt_coeffs(rc.moll.Q.c) << "\n\n";
    os << "[optimize]\n";
    os << "budget = " << rc.budget << "\n";
    os << "restarts = " << rc.restarts << "\n";
    os << "seed = " << rc.seed << "\n";
    os << "r_min = " << rc.space.r_min << "\n";
    os << "r_max = " << rc.space.r_max << "\n";
    os << "p1_degree = " << rc.space.p1_degree << "\n";
    os << "pl_degrees =";
    for (int d : rc.space.pl_degrees) os << ' ' << d;
    os << "\n";
    os << "q_odd_terms = " << rc.space.q_odd_terms << "\n";
    os << "warm_start = " << (rc.warm_start ? "true" : "false") << "\n";
    return os.str();
}

const std::map<std::string, std::string>& presets() {
    static const std::map<std::string, std::string> m = {
        {"thm1", R"(# K=3 kappa parameter set, theta1 = theta2 = 1/2
[params]
K = 3
R = 1.3
theta1 = 0.5
theta2 = 0.5
mode = kappa

[polynomials]
P1.basis = shifted
P1.coeffs = 0.225339 -1.01137 0.174004 -0.100235
P2.basis = linear
P2.coeffs = 1.05138 0.284201
P3.basis = linear
P3.coeffs = 0.222032 -0.13254
Q.basis = odd
Q.coeffs = 0.481936 0.632349 -0.144698 0.0304136

[optimize]
budget = 2000
restarts = 8
seed = 1
p1_degree = 4
pl_degrees = 2 2
q_odd_terms = 3
)"},
        {"thm1-star", R"(# K=3 kappa* parameter set, theta1 = theta2 = 1/2
[params]
K = 3
R = 1.2
theta1 = 0.5
theta2 = 0.5
mode = kappa_star

[polynomials]
P1.basis = shifted
P1.coeffs = 0.0531913 -0.594999 -0.00107597 -0.0761954
P2.basis = linear
P2.coeffs = 0.896567 -0.0297464
P3.basis = linear
P3.coeffs = 0.0699271 -0.108964
Q.basis = odd
Q.coeffs = 0.476202 0.523798

[optimize]
budget = 2000
restarts = 8
seed = 1
p1_degree = 4
pl_degrees = 2 2
q_odd_terms = 1
)"},
        {"thm2", R"(# K=3 kappa parameter set, theta1 = 4/7, theta2 = 3/7
[params]
K = 3
R = 1.295
theta1 = 0.5714285714285714
theta2 = 0.42857142857142855
mode = kappa

[polynomials]
P1.basis = shifted
P1.coeffs = 0.229117 -2.932318 4.856163 -2.390999
P2.basis = linear
P2.coeffs = -0.072644 1.559440
P3.basis = linear
P3.coeffs = 0.701568 -0.554403
Q.basis = odd
Q.coeffs = 0.492203 0.621972 -0.148163 0.033988

[optimize]
budget = 2000
restarts = 8
seed = 1
p1_degree = 4
pl_degrees = 2 2
q_odd_terms = 3
)"},
        {"thm2-star", R"(# K=3 kappa* parameter set, theta1 = 4/7, theta2 = 3/7
[params]
K = 3
R = 1.109
theta1 = 0.5714285714285714
theta2 = 0.42857142857142855
mode = kappa_star

[polynomials]
P1.basis = shifted
P1.coeffs = 0.0486916 -2.02526 3.43611 -1.62355
P2.basis = linear
P2.coeffs = -0.034431 1.09223
P3.basis = linear
P3.coeffs = 0.479296 -0.385868
Q.basis = odd
Q.coeffs = 0.485034 0.514966

[optimize]
budget = 2000
restarts = 8
seed = 1
p1_degree = 4
pl_degrees = 2 2
q_odd_terms = 1
)"},
    };
    return m;
}

}  // namespace moll
