#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ellmul/build.hpp"
#include "ellmul/cost.hpp"
#include "ellmul/elliptic.hpp"
#include "ellmul/errors.hpp"
#include "ellmul/function_field.hpp"
#include "ellmul/io.hpp"
#include "ellmul/optimizer.hpp"
#include "ellmul/tensor.hpp"

using namespace ellmul;
using ordered = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw validation_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_out(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw validation_error("cannot write " + path);
    out << content;
}

// One curve selector per subcommand: an equation string or explicit
// coefficient codes, never both.
struct CurveSel {
    std::string eq;
    std::vector<long long> a = {0, 0, 0, 0, 0};  // a1, a2, a3, a4, a6
    bool have_a = false;

    void attach(CLI::App* sub) {
        sub->add_option("--curve,-c", eq, "curve equation, e.g. \"y^2=x^3+x^2+2\"");
        static const char* names[] = {"--a1", "--a2", "--a3", "--a4", "--a6"};
        for (int i = 0; i < 5; ++i)
            sub->add_option(names[i], a[i], "Weierstrass coefficient (integer code)")
                ->each([this](const std::string&) { have_a = true; });
    }
    bool given() const { return !eq.empty() || have_a; }
    Curve resolve(std::uint32_t q) const {
        FieldPtr F = field_for(q);
        if (!eq.empty() && have_a)
            throw validation_error("give either an equation or coefficients, not both");
        if (!eq.empty()) return curve_from_equation(F, eq);
        if (have_a)
            return Curve(F, fq_elt(*F, a[0]), fq_elt(*F, a[1]), fq_elt(*F, a[2]),
                         fq_elt(*F, a[3]), fq_elt(*F, a[4]));
        throw validation_error("no curve given");
    }
};

int run_catalog(std::uint32_t q, const std::string& format) {
    std::vector<CatalogEntry> cat = catalog(q);
    if (format == "json") {
        FieldPtr Fp = catalog_field(q);
        const Field& F = *Fp;
        ordered arr = ordered::array();
        for (const CatalogEntry& e : cat) {
            ordered j;
            j["q"] = q;
            if (!F.prime()) {
                std::vector<int> m(F.modulus().begin(), F.modulus().end());
                j["modulus"] = m;
            }
            j["equation"] = e.equation;
            j["a1"] = fq_int(F, e.curve.a1());
            j["a2"] = fq_int(F, e.curve.a2());
            j["a3"] = fq_int(F, e.curve.a3());
            j["a4"] = fq_int(F, e.curve.a4());
            j["a6"] = fq_int(F, e.curve.a6());
            j["N1"] = e.cls.N1;
            auto [n1, n2] = group_structure(e.curve);
            j["group"] = std::vector<long long>{n1, n2};
            j["case"] = std::string(1, e.cls.label);
            j["slack"] = e.cls.slack;
            arr.push_back(j);
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < cat.size(); ++i) {
            const CatalogEntry& e = cat[i];
            auto [n1, n2] = group_structure(e.curve);
            std::printf("%2zu  %-26s N1=%-3lld group=(%lld,%lld)  case=%c  slack=%d\n", i,
                        e.equation.c_str(), e.cls.N1, n1, n2, e.cls.label, e.cls.slack);
        }
    }
    return 0;
}

int run_places(std::uint32_t q, const CurveSel& sel, int dmax, int dlist,
               const std::string& format) {
    Curve C = sel.resolve(q);
    ZetaData z = zeta_counts(C, dmax);
    std::vector<std::string> listed;
    if (dlist > 0) {
        if (dlist > 8) throw validation_error("place listing supports degree at most 8");
        FuncField FF(C);
        Rng rng(1);
        for (const Place& P : FF.places_of_degree(dlist, rng)) listed.push_back(place_str(P));
    }
    if (format == "json") {
        ordered j;
        j["q"] = q;
        j["curve"] = equation_of(C);
        j["m"] = z.m;
        j["N"] = z.N;
        j["B"] = z.B;
        if (dlist > 0) {
            j["d"] = dlist;
            j["places"] = listed;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::printf("curve: %s over F_%u, trace m = %lld\n", equation_of(C).c_str(), q, z.m);
        std::printf("%3s %10s %10s\n", "d", "N_d", "B_d");
        for (int d = 1; d <= dmax; ++d)
            std::printf("%3d %10lld %10lld\n", d, z.N[d - 1], z.B[d - 1]);
        if (dlist > 0) {
            std::printf("places of degree %d:\n", dlist);
            for (const std::string& s : listed) std::printf("  %s\n", s.c_str());
        }
    }
    return 0;
}

int run_bound(std::uint32_t q, int n, const CurveSel& sel, int dmax, bool tight,
              const std::string& format) {
    OptimizeOptions opt;
    opt.tight_case_b = tight;
    BoundResult r =
        sel.given() ? optimize_bound(q, n, sel.resolve(q), dmax, opt) : best_curve(q, n, dmax, opt);
    if (format == "json") {
        std::cout << bound_json(q, n, r);
    } else {
        std::printf("curve: %s (case %c, slack %d)\n", r.equation.c_str(), r.cls.label,
                    r.cls.slack);
        std::printf("target degree: %lld, deg G = %lld\n", r.target, r.shape.degree);
        auto ints = [](const std::vector<int>& v) {
            std::string s = "[";
            for (std::size_t i = 0; i < v.size(); ++i)
                s += (i ? ", " : "") + std::to_string(v[i]);
            return s + "]";
        };
        std::printf("N = %s, U = %s\n", ints(r.shape.N).c_str(), ints(r.shape.U).c_str());
        std::printf("rank bound: %s\n", bound_breakdown(q, r.shape).c_str());
    }
    return 0;
}

int run_build(std::uint32_t q, int n, const CurveSel& sel, int dmax, bool tight,
              std::uint64_t seed, const std::string& out) {
    OptimizeOptions opt;
    opt.tight_case_b = tight;
    BoundResult r =
        sel.given() ? optimize_bound(q, n, sel.resolve(q), dmax, opt) : best_curve(q, n, dmax, opt);
    std::fprintf(stderr, "# curve %s, bound %lld, deg G target %lld\n", r.equation.c_str(),
                 r.bound, r.shape.degree);
    BuildPlan plan = build(q, n, r.curve, r.shape, seed);
    std::fprintf(stderr, "# seed chain: root %llu -> attempt %d -> plan %llu\n",
                 static_cast<unsigned long long>(seed), plan.attempt,
                 static_cast<unsigned long long>(plan.seed));
    TensorDecomposition T = assemble_tensor(plan);
    VerifyReport rep = tensor_verify(T);
    if (!rep.pass()) throw verification_error("fresh build failed verification:\n" + rep.describe());
    std::fprintf(stderr, "# rank %d, deg G = %lld, verified %d basis pairs\n", T.rank(), plan.degG,
                 rep.pairs_checked);
    write_out(out, bundle_json(T));
    return 0;
}

int run_verify(const std::string& path) {
    TensorDecomposition T = bundle_from_json(slurp(path));
    VerifyReport rep = tensor_verify(T);
    std::printf("%s\n", rep.describe().c_str());
    if (!rep.pass()) {
        std::string msg = "bundle fails verification";
        if (rep.witness) {
            auto [i, j] = *rep.witness;
            msg += " at basis pair (" + std::to_string(i) + ", " + std::to_string(j) + ")";
        }
        throw verification_error(msg);
    }
    std::printf("ok: rank %d, %d basis pairs\n", T.rank(), rep.pairs_checked);
    return 0;
}

int run_emit(const std::string& path, const std::string& out) {
    TensorDecomposition T = bundle_from_json(slurp(path));
    VerifyReport rep = tensor_verify(T);
    if (!rep.pass()) throw verification_error("refusing to emit an unverified bundle:\n" + rep.describe());
    SlpProgram P = emit_slp(T);
    std::fprintf(stderr, "# %d products, %d additions, %d scalar multiplications\n", P.products,
                 P.adds, P.smuls);
    write_out(out, P.text);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bilinear multiplication algorithms for F_{q^n} from elliptic curves"};
    app.require_subcommand(1);

    std::uint32_t q = 0;
    int n = 0, dmax = 0, dlist = 0;
    std::uint64_t seed = 1;
    bool tight = false;
    std::string format = "text", out, bundle_path;
    CurveSel sel_places, sel_bound, sel_build;

    CLI::App* cat = app.add_subcommand("catalog", "list the named curves over F_q");
    cat->add_option("--q", q, "field size")->required();
    cat->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    CLI::App* pl = app.add_subcommand("places", "point and place counts of one curve");
    pl->add_option("--q", q, "field size")->required();
    sel_places.attach(pl);
    pl->add_option("--dmax", dmax, "largest degree to tabulate");
    pl->add_option("--d", dlist, "also list the places of this degree")->check(CLI::Range(1, 8));
    pl->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    CLI::App* bd = app.add_subcommand("bound", "cheapest interpolation shape and rank bound");
    bd->add_option("--q", q, "field size")->required();
    bd->add_option("--n", n, "extension degree")->required();
    sel_bound.attach(bd);
    bd->add_option("--dmax", dmax, "largest place degree to use");
    bd->add_flag("--tight", tight, "case b: target 2n and rely on the sigma check");
    bd->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    CLI::App* bu = app.add_subcommand("build", "construct, verify, and write a bundle");
    bu->add_option("--q", q, "field size")->required();
    bu->add_option("--n", n, "extension degree")->required();
    sel_build.attach(bu);
    bu->add_option("--dmax", dmax, "largest place degree to use");
    bu->add_flag("--tight", tight, "case b: target 2n and rely on the sigma check");
    bu->add_option("--seed", seed, "root seed of the retry chain");
    bu->add_option("--out,-o", out, "bundle file (default stdout)");

    CLI::App* ve = app.add_subcommand("verify", "re-check a bundle file independently");
    ve->add_option("--bundle", bundle_path, "bundle JSON file")->required();

    CLI::App* em = app.add_subcommand("emit", "verify a bundle and write its straight-line program");
    em->add_option("--bundle", bundle_path, "bundle JSON file")->required();
    em->add_option("--out,-o", out, "program file (default stdout)");

    try {
        app.parse(argc, argv);
        if (app.got_subcommand(cat)) return run_catalog(q, format);
        if (app.got_subcommand(pl))
            return run_places(q, sel_places, dmax > 0 ? dmax : 8, dlist, format);
        if (app.got_subcommand(bd))
            return run_bound(q, n, sel_bound, dmax > 0 ? dmax : cost_dmax(q), tight, format);
        if (app.got_subcommand(bu))
            return run_build(q, n, sel_build, dmax > 0 ? dmax : std::min(4, cost_dmax(q)), tight,
                             seed, out);
        if (app.got_subcommand(ve)) return run_verify(bundle_path);
        if (app.got_subcommand(em)) return run_emit(bundle_path, out);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const construction_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const verification_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
