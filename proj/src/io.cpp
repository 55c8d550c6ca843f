#include "ellmul/io.hpp"

#include <sstream>

#include "json.hpp"

#include "ellmul/cost.hpp"
#include "ellmul/errors.hpp"

namespace ellmul {

using ordered = nlohmann::ordered_json;

long long fq_int(const Field& F, const Elt& a) {
    long long v = 0, pw = 1;
    for (int i = 0; i < F.dim(); ++i) {
        v += pw * a[i];
        pw *= F.p();
    }
    return v;
}

Elt fq_elt(const Field& F, long long code) {
    if (code < 0 || static_cast<u128>(code) >= F.size())
        throw validation_error("field element code out of range: " + std::to_string(code));
    return F.element_at(static_cast<u128>(code));
}

FieldPtr field_for(std::uint32_t q) {
    if (q < 2) throw validation_error("field size must be at least 2");
    std::uint32_t p = 2;
    while (q % p != 0) ++p;
    std::uint32_t r = q;
    while (r % p == 0) r /= p;
    if (r != 1) throw validation_error("field size is not a prime power: " + std::to_string(q));
    if (q == p) return std::make_shared<Field>(p);
    return catalog_field(q);
}

std::string bound_breakdown(std::uint32_t q, const DivisorShape& shape) {
    std::ostringstream out;
    bool first = true;
    long long total = 0;
    for (std::size_t i = 0; i < shape.N.size(); ++i) {
        if (shape.N[i] == 0) continue;
        int c = cost(q, static_cast<int>(i) + 1, shape.U[i]);
        if (!first) out << " + ";
        out << shape.N[i] << "·" << c;
        total += static_cast<long long>(shape.N[i]) * c;
        first = false;
    }
    out << " = " << total;
    return out.str();
}

std::string bound_json(std::uint32_t q, int n, const BoundResult& r) {
    ordered j;
    j["q"] = q;
    j["n"] = n;
    j["curve"] = r.equation;
    j["case"] = std::string(1, r.cls.label);
    j["slack"] = r.cls.slack;
    j["N"] = r.shape.N;
    j["U"] = r.shape.U;
    j["bound"] = r.bound;
    j["degG"] = r.shape.degree;
    return j.dump(2) + "\n";
}

std::string bundle_json(const TensorDecomposition& T) {
    const Field& F = *T.F;
    auto codes = [&](const std::vector<Elt>& v) {
        std::vector<long long> c;
        for (const Elt& a : v) c.push_back(fq_int(F, a));
        return c;
    };
    ordered j;
    j["q"] = static_cast<std::uint64_t>(F.size());
    j["n"] = T.n;
    j["modulus"] = codes(T.h);
    ordered rows = ordered::array();
    for (int i = 0; i < T.basis_change.rows; ++i) {
        std::vector<long long> row;
        for (int k = 0; k < T.basis_change.cols; ++k) row.push_back(fq_int(F, T.basis_change.at(i, k)));
        rows.push_back(row);
    }
    j["basis_change"] = rows;
    ordered prods = ordered::array();
    for (const TensorProduct& P : T.products) {
        ordered e;
        e["phi"] = codes(P.phi);
        e["w"] = codes(P.w);
        prods.push_back(e);
    }
    j["products"] = prods;
    j["symmetric"] = T.symmetric;
    j["rank"] = T.declared_rank;
    ordered prov;
    prov["curve"] = T.provenance.curve;
    prov["shape"] = ordered{{"N", T.provenance.N}, {"U", T.provenance.U}};
    prov["seed"] = T.provenance.seed;
    j["provenance"] = prov;
    return j.dump(2) + "\n";
}

TensorDecomposition bundle_from_json(const std::string& text) {
    ordered j;
    try {
        j = ordered::parse(text);
    } catch (const std::exception& e) {
        throw validation_error(std::string("bundle parse: ") + e.what());
    }
    try {
        TensorDecomposition T;
        std::uint64_t q = j.at("q").get<std::uint64_t>();
        if (q < 2 || q > 1u << 20) throw validation_error("bundle field size out of range");
        T.F = field_for(static_cast<std::uint32_t>(q));
        const Field& F = *T.F;
        T.n = j.at("n").get<int>();
        if (T.n < 1 || T.n > 5000) throw validation_error("bundle extension degree out of range");
        auto elems = [&](const ordered& arr) {
            std::vector<Elt> v;
            for (const auto& c : arr) v.push_back(fq_elt(F, c.get<long long>()));
            return v;
        };
        T.h = elems(j.at("modulus"));
        if (static_cast<int>(T.h.size()) != T.n + 1 || !(T.h.back() == F.one()))
            throw validation_error("bundle modulus is not monic of the stated degree");
        const ordered& rows = j.at("basis_change");
        if (static_cast<int>(rows.size()) != T.n) throw validation_error("basis change has wrong row count");
        T.basis_change = Mat(F, T.n, T.n);
        for (int i = 0; i < T.n; ++i) {
            const ordered& row = rows[i];
            if (static_cast<int>(row.size()) != T.n)
                throw validation_error("basis change has wrong column count");
            for (int k = 0; k < T.n; ++k) T.basis_change.at(i, k) = fq_elt(F, row[k].get<long long>());
        }
        for (const auto& e : j.at("products")) {
            TensorProduct P{elems(e.at("phi")), elems(e.at("w"))};
            if (static_cast<int>(P.phi.size()) != T.n || static_cast<int>(P.w.size()) != T.n)
                throw validation_error("product entry has wrong length");
            T.products.push_back(std::move(P));
        }
        T.symmetric = j.at("symmetric").get<bool>();
        T.declared_rank = j.at("rank").get<int>();
        const ordered& prov = j.at("provenance");
        T.provenance.curve = prov.at("curve").get<std::string>();
        T.provenance.N = prov.at("shape").at("N").get<std::vector<int>>();
        T.provenance.U = prov.at("shape").at("U").get<std::vector<int>>();
        T.provenance.seed = prov.at("seed").get<std::uint64_t>();
        return T;
    } catch (const ordered::exception& e) {
        throw validation_error(std::string("bundle schema: ") + e.what());
    }
}

}  // namespace ellmul
