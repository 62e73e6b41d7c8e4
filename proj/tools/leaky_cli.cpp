// Command-line interface for computing one-part k-leaky double Hurwitz
// descendants through three independent evaluation paths with exact
// rational arithmetic.
//
// Exit codes: 0 success, 2 validation error, 3 crosscheck mismatch,
// 4 unsupported method/profile combination.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "leaky/closed_forms.hpp"
#include "leaky/poly.hpp"
#include "leaky/profile.hpp"
#include "leaky/recursions.hpp"
#include "leaky/series.hpp"
#include "leaky/trop_enum.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitMismatch = 3;
constexpr int kExitUnsupported = 4;

constexpr const char* kCacheEnvVar = "LEAKY_MEMO_CACHE";

std::vector<leaky::Int> parse_int_list(const std::string& s) {
    std::vector<leaky::Int> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) out.emplace_back(item);
    return out;
}

std::vector<long> parse_long_list(const std::string& s) {
    std::vector<long> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(std::stol(item));
    return out;
}

void emit_error(const std::string& kind, const std::string& message, bool json_output) {
    if (json_output) {
        std::cout << nlohmann::json{{"error", kind}, {"message", message}}.dump() << "\n";
    } else {
        std::cerr << "error (" << kind << "): " << message << "\n";
    }
}

// Persistent memo cache, controlled by the LEAKY_MEMO_CACHE env variable.
class CacheHandle {
public:
    CacheHandle() {
        if (const char* p = std::getenv(kCacheEnvVar)) {
            path_ = p;
            cache_.load_file(path_);
        }
    }
    ~CacheHandle() {
        if (!path_.empty()) cache_.save_file(path_);
    }
    leaky::MemoCache* get() { return &cache_; }

private:
    leaky::MemoCache cache_;
    std::string path_;
};

struct MethodResult {
    std::string method;
    leaky::Rational value;
    long long elapsed_us = 0;
};

bool formula_covered(const leaky::Profile& p) {
    const long e_tail_nonzero = [&] {
        long c = 0;
        for (std::size_t i = 1; i < p.psi.size(); ++i)
            if (p.psi[i] > 0) ++c;
        return c;
    }();
    if (p.genus == 0) {
        if (e_tail_nonzero == 0) return true;                       // j_e0_0 / h0_base
        if (e_tail_nonzero == 1 && p.psi[0] == 0) return true;      // j_0_e1
        return false;
    }
    if (p.genus == 1 && p.psi_total() == 0) return true;            // h1_formula
    if (p.k == 0 && e_tail_nonzero == 0) return true;               // S(z) formula
    return false;
}

leaky::Rational run_formula(const leaky::Profile& p) {
    const long m = static_cast<long>(p.m());
    if (p.genus == 0) {
        long e1_pos = -1;
        for (std::size_t i = 1; i < p.psi.size(); ++i)
            if (p.psi[i] > 0) e1_pos = static_cast<long>(i);
        if (e1_pos < 0)
            return leaky::j_e0_0(m, p.psi[0], leaky::Rational(p.d), leaky::Rational(p.k));
        if (p.psi[0] == 0)
            return leaky::j_0_e1(m, p.psi[static_cast<std::size_t>(e1_pos)], leaky::Rational(p.d),
                                 leaky::Rational(p.nu[static_cast<std::size_t>(e1_pos) - 1]),
                                 leaky::Rational(p.k));
        throw leaky::DomainError("no closed form covers psi-insertions at both p_0 and a nu-end");
    }
    if (p.genus == 1 && p.psi_total() == 0) {
        std::vector<leaky::Rational> nu(p.nu.begin(), p.nu.end());
        return leaky::h1_formula(leaky::Rational(p.d), nu, leaky::Rational(p.k));
    }
    if (p.k == 0) {
        std::vector<leaky::Rational> nu(p.nu.begin(), p.nu.end());
        return leaky::hg_k0_descendant(p.genus, p.psi[0], leaky::Rational(p.d), nu);
    }
    throw leaky::DomainError("no closed form covers this profile");
}

bool recursion_covered(const leaky::Profile& p) {
    return p.genus == 0 || p.psi_total() == 0;
}

leaky::Rational run_recursion(const leaky::Profile& p, leaky::MemoCache* cache) {
    if (p.genus == 0) return leaky::h0_rec(p.d, p.nu, p.psi, cache);
    if (p.psi_total() == 0) return leaky::hg_onepart_rec(p.genus, p.d, p.nu, cache);
    throw leaky::DomainError("no recursion covers genus >= 1 with psi-insertions");
}

MethodResult run_method(const std::string& method, const leaky::Profile& p,
                        leaky::MemoCache* cache) {
    const auto start = std::chrono::steady_clock::now();
    MethodResult r;
    r.method = method;
    if (method == "tropical") {
        if (p.genus != 0) throw leaky::DomainError("tropical enumeration requires genus 0");
        r.value = leaky::tropical_count(p);
    } else if (method == "recursion") {
        r.value = run_recursion(p, cache);
    } else if (method == "formula") {
        r.value = run_formula(p);
    } else {
        throw leaky::DomainError("unknown method: " + method);
    }
    r.elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    return r;
}

nlohmann::json result_json(const leaky::Profile& p, const MethodResult& r) {
    return nlohmann::json{{"request", leaky::to_json(p)},
                          {"k", p.k.str()},
                          {"value", {{"num", leaky::numerator(r.value).str()},
                                     {"den", leaky::denominator(r.value).str()}}},
                          {"method", r.method},
                          {"elapsed_us", r.elapsed_us}};
}

void print_result(const leaky::Profile& p, const MethodResult& r, bool json_output, bool decimal) {
    if (json_output) {
        std::cout << result_json(p, r).dump() << "\n";
        return;
    }
    std::cout << "value = " << leaky::to_fraction_string(r.value);
    if (decimal) {
        const double approx = static_cast<double>(leaky::numerator(r.value)) /
                              static_cast<double>(leaky::denominator(r.value));
        std::cout << "  (~" << approx << ", approximate)";
    }
    std::cout << "  [k = " << p.k << ", method = " << r.method << ", " << r.elapsed_us << " us]\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"one-part k-leaky double Hurwitz descendant calculator"};
    app.require_subcommand(1);

    long genus = 0;
    std::string d_str, nu_str, psi_str, method = "auto", output = "text";
    bool decimal = false;

    auto add_profile_opts = [&](CLI::App* cmd, bool need_psi) {
        cmd->add_option("--genus,-g", genus, "genus")->required();
        cmd->add_option("--d", d_str, "positive ramification d")->required();
        cmd->add_option("--nu", nu_str, "comma-separated nu list")->required();
        auto* o = cmd->add_option("--psi", psi_str, "comma-separated psi exponents, e0 first");
        if (need_psi) (void)o;  // optional; defaults to all zeros
        cmd->add_option("--output", output, "text|json")->check(CLI::IsMember({"text", "json"}));
    };

    auto* compute = app.add_subcommand("compute", "evaluate the invariant");
    add_profile_opts(compute, true);
    compute->add_option("--method", method, "tropical|recursion|formula|auto")
        ->check(CLI::IsMember({"tropical", "recursion", "formula", "auto"}));
    compute->add_flag("--decimal", decimal, "add an approximate decimal rendering");

    auto* crosscheck = app.add_subcommand("crosscheck", "run all applicable methods and compare");
    add_profile_opts(crosscheck, true);

    auto* covers = app.add_subcommand("covers", "list tropical covers (genus 0)");
    add_profile_opts(covers, true);
    bool dot = false;
    covers->add_flag("--dot", dot, "emit DOT instead of JSON records");

    auto* interpolate = app.add_subcommand("interpolate", "reconstruct the genus-0 polynomial");
    long interp_m = 0;
    interpolate->add_option("--m", interp_m, "number of negative ends")->required();
    interpolate->add_option("--psi", psi_str, "comma-separated psi exponents, e0 first")->required();
    interpolate->add_option("--output", output, "text|json")->check(CLI::IsMember({"text", "json"}));

    auto* series = app.add_subcommand("series", "S(z) table or the k=0 descendant formula");
    long series_order = 0, series_e0 = 0;
    series->add_option("--order", series_order, "print S(z) coefficients through z^(order-1)");
    series->add_option("--genus,-g", genus, "genus for the k=0 formula");
    series->add_option("--nu", nu_str, "comma-separated nu list (d = sum nu)");
    series->add_option("--e0", series_e0, "psi exponent at the d-end");
    series->add_option("--output", output, "text|json")->check(CLI::IsMember({"text", "json"}));

    CLI11_PARSE(app, argc, argv);
    const bool json_output = output == "json";

    try {
        CacheHandle cache;

        if (series->parsed()) {
            if (series_order > 0) {
                const leaky::TruncatedSeries s = leaky::s_series(static_cast<std::size_t>(series_order));
                if (json_output) {
                    nlohmann::json coeffs = nlohmann::json::array();
                    for (std::size_t i = 0; i < s.order(); ++i)
                        coeffs.push_back(nlohmann::json{{"num", leaky::numerator(s.coeff(i)).str()},
                                                        {"den", leaky::denominator(s.coeff(i)).str()}});
                    std::cout << nlohmann::json{{"series", "S"}, {"coefficients", coeffs}}.dump() << "\n";
                } else {
                    for (std::size_t i = 0; i < s.order(); ++i)
                        std::cout << "z^" << i << "  " << leaky::to_fraction_string(s.coeff(i)) << "\n";
                }
                return kExitOk;
            }
            if (nu_str.empty()) {
                emit_error("usage", "series requires --order or --genus/--nu", json_output);
                return kExitUnsupported;
            }
            const std::vector<leaky::Int> nu = parse_int_list(nu_str);
            leaky::Int d = 0;
            for (const auto& v : nu) d += v;
            std::vector<long> psi(nu.size() + 1, 0);
            psi[0] = series_e0;
            const leaky::Profile p = leaky::validate(genus, d, nu, psi);
            std::vector<leaky::Rational> nuq(p.nu.begin(), p.nu.end());
            const auto start = std::chrono::steady_clock::now();
            MethodResult r;
            r.method = "formula";
            r.value = leaky::hg_k0_descendant(p.genus, p.psi[0], leaky::Rational(p.d), nuq);
            r.elapsed_us = std::chrono::duration_cast<std::chrono::microseconds>(
                               std::chrono::steady_clock::now() - start)
                               .count();
            print_result(p, r, json_output, decimal);
            return kExitOk;
        }

        if (interpolate->parsed()) {
            const std::vector<long> psi = parse_long_list(psi_str);
            const leaky::MultivariatePolynomial poly =
                leaky::interpolate_h0(interp_m, psi, 0, cache.get());
            if (json_output) std::cout << poly.to_json().dump() << "\n";
            else std::cout << poly.to_string() << "\n";
            return kExitOk;
        }

        // remaining subcommands take a full profile
        const std::vector<leaky::Int> nu = parse_int_list(nu_str);
        std::vector<long> psi(nu.size() + 1, 0);
        if (!psi_str.empty()) psi = parse_long_list(psi_str);
        const leaky::Profile p = leaky::validate(genus, leaky::Int(d_str), nu, psi);

        if (covers->parsed()) {
            if (p.genus != 0) {
                emit_error("unsupported", "covers requires genus 0", json_output);
                return kExitUnsupported;
            }
            leaky::for_each_cover(p, [&](const leaky::TropicalCover& c) {
                if (dot) std::cout << leaky::to_dot(c, p);
                else std::cout << leaky::to_json(c, p).dump() << "\n";
            });
            return kExitOk;
        }

        if (compute->parsed()) {
            std::string chosen = method;
            if (chosen == "auto") {
                if (formula_covered(p)) chosen = "formula";
                else if (recursion_covered(p)) chosen = "recursion";
                else if (p.genus == 0) chosen = "tropical";
                else {
                    emit_error("unsupported", "no method covers this profile", json_output);
                    return kExitUnsupported;
                }
            }
            if ((chosen == "tropical" && p.genus != 0) ||
                (chosen == "formula" && !formula_covered(p)) ||
                (chosen == "recursion" && !recursion_covered(p))) {
                emit_error("unsupported", "method '" + chosen + "' does not cover this profile",
                           json_output);
                return kExitUnsupported;
            }
            print_result(p, run_method(chosen, p, cache.get()), json_output, decimal);
            return kExitOk;
        }

        if (crosscheck->parsed()) {
            std::vector<std::string> methods;
            if (p.genus == 0) methods.push_back("tropical");
            if (recursion_covered(p)) methods.push_back("recursion");
            if (formula_covered(p)) methods.push_back("formula");
            if (methods.size() < 2) {
                emit_error("unsupported", "fewer than two methods cover this profile", json_output);
                return kExitUnsupported;
            }
            std::vector<MethodResult> results;
            for (const std::string& meth : methods) results.push_back(run_method(meth, p, cache.get()));
            bool agree = true;
            for (const MethodResult& r : results) agree = agree && r.value == results[0].value;
            if (json_output) {
                nlohmann::json arr = nlohmann::json::array();
                for (const MethodResult& r : results) arr.push_back(result_json(p, r));
                std::cout << nlohmann::json{{"agree", agree}, {"results", arr}}.dump() << "\n";
            } else {
                for (const MethodResult& r : results)
                    std::cout << r.method << ": " << leaky::to_fraction_string(r.value) << "  ("
                              << r.elapsed_us << " us)\n";
                std::cout << (agree ? "agree" : "MISMATCH") << "\n";
            }
            if (!agree) {
                // diagnostic dump of per-cover contributions
                if (p.genus == 0) {
                    std::cerr << "per-cover contributions:\n";
                    leaky::for_each_cover(p, [&](const leaky::TropicalCover& c) {
                        std::cerr << leaky::to_json(c, p).dump() << "\n";
                    });
                }
                return kExitMismatch;
            }
            return kExitOk;
        }
    } catch (const leaky::ValidationError& e) {
        emit_error("validation", e.what(), json_output);
        return kExitValidation;
    } catch (const leaky::DomainError& e) {
        emit_error("unsupported", e.what(), json_output);
        return kExitUnsupported;
    } catch (const std::exception& e) {
        emit_error("internal", e.what(), json_output);
        return kExitValidation;
    }
    return kExitOk;
}
