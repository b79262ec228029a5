#pragma once
// Flat key-value config files with [params], [polynomials], [optimize] and
// [verify] sections; polynomial entries accept monomial coefficients or the
// x(1-x)^i / (1-2x)^{2i-1} parameter bases via a basis tag.

#include <map>
#include <string>
#include <vector>

#include "moll/functional.hpp"
#include "moll/optimize.hpp"

namespace moll {

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct VerifyOptions {
    std::string suite = "all";
    std::int64_t limit = 10000;
};

struct RunConfig {
    MollifierConfig moll;
    bool kappa_star = false;
    // optimizer settings
    int budget = 2000;
    int restarts = 8;
    std::uint64_t seed = 1;
    SearchSpace space;        // derived from [optimize] + [params]
    bool warm_start = true;   // seed the search at the configured polynomials
    VerifyOptions verify;
};

// parse-then-validate; ParseError names the offending key
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// serialize a config so that it re-parses to the same evaluation (17 digits)
std::string write_config(const RunConfig& rc);

// bundled parameter presets: thm1, thm1-star, thm2, thm2-star
const std::map<std::string, std::string>& presets();

}  // namespace moll
