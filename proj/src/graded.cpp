#include "qqinv/graded.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <type_traits>

namespace qqinv {

namespace {

constexpr const char* kCacheMagic = "qqinv-component";
constexpr int kCacheVersion = 1;

std::uint64_t fnv1a(std::uint64_t h, std::string_view s) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

template <class F>
F parse_coeff(const std::string& s, const std::function<F(const QScalar&)>& convert) {
    if constexpr (std::is_same_v<F, QScalar>) {
        (void)convert;
        return QScalar::parse(s);
    } else {
        return convert(QScalar::from_mpz(mpz_class(s)));
    }
}

std::string word_code(const Word& w) {
    if (w.empty()) return "-";
    std::string out;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) out += '.';
        out += std::to_string(static_cast<unsigned char>(w[k]));
    }
    return out;
}

Word word_decode(const std::string& s) {
    Word w;
    if (s == "-") return w;
    std::istringstream is(s);
    std::string part;
    while (std::getline(is, part, '.')) w.push_back(static_cast<char>(std::stoi(part)));
    return w;
}

}  // namespace

template <class F>
GradedAlgebra<F>::GradedAlgebra(GenSet g, const std::vector<Elem>& relations, Convert convert, std::string tag,
                                GradedOptions opt)
    : g_(g), convert_(std::move(convert)), tag_(std::move(tag)), opt_(std::move(opt)) {
    std::uint64_t h = 1469598103934665603ull;
    h = fnv1a(h, tag_);
    h = fnv1a(h, std::to_string(g.r) + "," + std::to_string(g.s) + "," + std::to_string(g.n));
    for (const auto& x : relations) {
        if (x.empty()) continue;
        const auto bd = g_.bidegree(x.begin()->first);
        ElemT<F> y;
        for (const auto& [w, c] : x) {
            if (w.size() != 2 || g_.bidegree(w) != bd)
                throw std::invalid_argument("GradedAlgebra: relations must be quadratic and bihomogeneous");
            F v = convert_(c);
            if (!v.is_zero()) y.emplace(w, v);
        }
        if (!y.empty()) quad_[bd].push_back(std::move(y));
        h = fnv1a(h, elem_to_string(g_, x));
        h = fnv1a(h, "\n");
    }
    fingerprint_ = h;
}

template <class F>
typename GradedAlgebra<F>::Slot& GradedAlgebra<F>::slot(int dt, int db) {
    if (dt < 0 || db < 0) throw std::out_of_range("negative bidegree");
    auto key = std::make_pair(dt, db);
    auto it = slots_.find(key);
    if (it != slots_.end() && it->second.comp) return it->second;
    const double words = word_count(g_, dt, db);
    if (words > opt_.max_words) throw ResourceGuard(dt, db, words);
    auto comp = std::make_unique<Component<F>>();
    comp->dt = dt;
    comp->db = db;
    comp->words = words;
    if (load(*comp)) {
        ++cache_hits_;
    } else {
        build(dt, db, *comp);
        store(*comp);
    }
    Slot& s = slots_[key];
    s.comp = std::move(comp);
    return s;
}

template <class F>
const Component<F>& GradedAlgebra<F>::component(int dt, int db) {
    return *slot(dt, db).comp;
}

template <class F>
void GradedAlgebra<F>::build(int dt, int db, Component<F>& c) {
    const int d = dt + db;
    if (d == 0) {
        c.cols = {Word()};
    } else {
        if (dt > 0) {
            const Component<F>& lower = component(dt - 1, db);
            for (int id = 0; id < g_.num_t(); ++id)
                for (const Word& b : lower.basis) c.cols.push_back(b + static_cast<char>(id));
        }
        if (db > 0) {
            const Component<F>& lower = component(dt, db - 1);
            for (int id = g_.num_t(); id < g_.size(); ++id)
                for (const Word& b : lower.basis) c.cols.push_back(b + static_cast<char>(id));
        }
        std::sort(c.cols.begin(), c.cols.end());
    }
    for (std::size_t k = 0; k < c.cols.size(); ++k) c.col_of.emplace(c.cols[k], static_cast<int>(k));

    if (d == 2) {
        auto it = quad_.find({dt, db});
        if (it != quad_.end())
            for (const auto& rel : it->second) {
                SparseVec<F> v;
                for (const auto& [w, x] : rel) v.emplace(c.col_of.at(w), x);
                c.rref.insert(std::move(v));
            }
    } else if (d > 2) {
        static const std::pair<int, int> kinds[] = {{2, 0}, {1, 1}, {0, 2}};
        for (auto [t2, b2] : kinds) {
            if (t2 > dt || b2 > db || !quad_.count({t2, b2})) continue;
            const Component<F>& rc = component(t2, b2);
            const Component<F>& uc = component(dt - t2, db - b2);
            const std::vector<Word> us = uc.basis;
            for (const Word& u : us)
                for (const auto& [p, row] : rc.rref.rows()) {
                    SparseVec<F> acc;
                    for (const auto& [col, x] : row) axpy(acc, x, reduce_last(c, u + rc.cols[static_cast<std::size_t>(col)]));
                    c.rref.insert(std::move(acc));
                }
        }
    }
    c.rref.back_substitute();
    c.col_to_basis.assign(c.cols.size(), -1);
    for (std::size_t k = 0; k < c.cols.size(); ++k) {
        if (c.rref.is_pivot(static_cast<int>(k))) continue;
        c.col_to_basis[k] = static_cast<int>(c.basis.size());
        c.basis_of.emplace(c.cols[k], static_cast<int>(c.basis.size()));
        c.basis.push_back(c.cols[k]);
    }
}

template <class F>
SparseVec<F> GradedAlgebra<F>::reduce_last(const Component<F>& c, const Word& w) {
    const char g = w.back();
    const Word head = w.substr(0, w.size() - 1);
    const SparseVec<F>& v = nf_word(head);
    auto [dt, db] = g_.bidegree(head);
    const Component<F>& lower = component(dt, db);
    SparseVec<F> out;
    for (const auto& [bi, x] : v) out.emplace(c.col_of.at(lower.basis[static_cast<std::size_t>(bi)] + g), x);
    return out;
}

template <class F>
const SparseVec<F>& GradedAlgebra<F>::nf_word(const Word& w) {
    auto [dt, db] = g_.bidegree(w);
    Slot& s = slot(dt, db);
    auto it = s.memo.find(w);
    if (it != s.memo.end()) return it->second;
    const Component<F>& c = *s.comp;
    SparseVec<F> out;
    if (w.empty()) {
        out.emplace(0, convert_(QScalar(1)));
    } else {
        const SparseVec<F> v = reduce_last(c, w);
        for (const auto& [col, x] : v) {
            const int b = c.col_to_basis[static_cast<std::size_t>(col)];
            if (b >= 0) {
                add_entry(out, b, x);
                continue;
            }
            for (const auto& [c2, y] : c.rref.rows().at(col))
                if (c2 != col) add_entry(out, c.col_to_basis[static_cast<std::size_t>(c2)], -(x * y));
        }
    }
    return s.memo.emplace(w, std::move(out)).first->second;
}

template <class F>
SparseVec<F> GradedAlgebra<F>::coords(int dt, int db, const ElemT<F>& x) {
    SparseVec<F> out;
    for (const auto& [w, c] : x) {
        if (g_.bidegree(w) != std::make_pair(dt, db)) throw std::invalid_argument("coords: element not homogeneous");
        axpy(out, c, nf_word(w));
    }
    return out;
}

template <class F>
ElemT<F> GradedAlgebra<F>::from_coords(int dt, int db, const SparseVec<F>& v) {
    const Component<F>& c = component(dt, db);
    ElemT<F> out;
    for (const auto& [k, x] : v)
        if (!x.is_zero()) out.emplace(c.basis.at(static_cast<std::size_t>(k)), x);
    return out;
}

template <class F>
ElemT<F> GradedAlgebra<F>::normal_form(const ElemT<F>& x) {
    std::map<std::pair<int, int>, SparseVec<F>> parts;
    for (const auto& [w, c] : x) axpy(parts[g_.bidegree(w)], c, nf_word(w));
    ElemT<F> out;
    for (const auto& [bd, v] : parts)
        for (auto& [w, c] : from_coords(bd.first, bd.second, v)) out.emplace(w, c);
    return out;
}

template <class F>
ElemT<F> GradedAlgebra<F>::multiply(const ElemT<F>& x, const ElemT<F>& y) {
    ElemT<F> prod;
    for (const auto& [wx, cx] : x)
        for (const auto& [wy, cy] : y) {
            const F v = cx * cy;
            auto it = prod.find(wx + wy);
            if (it == prod.end()) {
                if (!v.is_zero()) prod.emplace(wx + wy, v);
            } else {
                it->second += v;
                if (it->second.is_zero()) prod.erase(it);
            }
        }
    return normal_form(prod);
}

namespace {

template <class F>
void elem_axpy(ElemT<F>& out, const F& c, const Word& w) {
    if (c.is_zero()) return;
    auto it = out.find(w);
    if (it == out.end()) {
        out.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) out.erase(it);
}

}  // namespace

template <class F>
ElemT<F> GradedAlgebra<F>::split_normal_form(const ElemT<F>& x) {
    // words t..t tb..tb
    std::function<const ElemT<F>&(const Word&)> sorted = [&](const Word& w) -> const ElemT<F>& {
        auto it = sorted_memo_.find(w);
        if (it != sorted_memo_.end()) return it->second;
        ElemT<F> out;
        std::size_t k = 0;
        while (k + 1 < w.size() && !(!g_.is_t(w[k]) && g_.is_t(w[k + 1]))) ++k;
        if (k + 1 >= w.size()) {
            out.emplace(w, convert_(QScalar(1)));
        } else {
            const Word pair = w.substr(k, 2);
            const Component<F>& c = component(1, 1);
            for (const auto& [b, v] : nf_word(pair)) {
                const Word& bw = c.basis.at(static_cast<std::size_t>(b));
                if (!g_.is_t(bw[0])) throw std::logic_error("split normal form needs t·tb words in bidegree (1,1)");
                const Word next = w.substr(0, k) + bw + w.substr(k + 2);
                for (const auto& [u, y] : sorted(next)) elem_axpy(out, v * y, u);
            }
        }
        return sorted_memo_.emplace(w, std::move(out)).first->second;
    };

    ElemT<F> flat;
    for (const auto& [w, c] : x)
        for (const auto& [u, y] : sorted(w)) elem_axpy(flat, c * y, u);

    ElemT<F> out;
    for (const auto& [w, c] : flat) {
        std::size_t cut = 0;
        while (cut < w.size() && g_.is_t(w[cut])) ++cut;
        const Word left = w.substr(0, cut), right = w.substr(cut);
        const Component<F>& cl = component(static_cast<int>(left.size()), 0);
        const Component<F>& cr = component(0, static_cast<int>(right.size()));
        const SparseVec<F> vl = nf_word(left);
        const SparseVec<F>& vr = nf_word(right);
        for (const auto& [i, a] : vl)
            for (const auto& [j, b] : vr)
                elem_axpy(out, c * a * b,
                          cl.basis.at(static_cast<std::size_t>(i)) + cr.basis.at(static_cast<std::size_t>(j)));
    }
    return out;
}

template <class F>
ElemT<F> GradedAlgebra<F>::split_multiply(const ElemT<F>& x, const ElemT<F>& y) {
    ElemT<F> prod;
    for (const auto& [wx, cx] : x)
        for (const auto& [wy, cy] : y) elem_axpy(prod, cx * cy, wx + wy);
    return split_normal_form(prod);
}

template <class F>
std::string GradedAlgebra<F>::cache_path(int dt, int db) const {
    std::ostringstream os;
    os << opt_.cache_dir << "/comp-" << tag_ << "-" << g_.r << "_" << g_.s << "_" << g_.n << "-" << dt << "_" << db
       << "-" << std::hex << fingerprint_ << ".txt";
    return os.str();
}

template <class F>
bool GradedAlgebra<F>::load(Component<F>& c) const {
    if (opt_.cache_dir.empty()) return false;
    std::ifstream in(cache_path(c.dt, c.db));
    if (!in) return false;
    try {
        std::string magic, key;
        int version = 0;
        in >> magic >> version;
        if (magic != kCacheMagic || version != kCacheVersion) return false;
        std::string tag;
        int r, s, n, dt, db;
        std::uint64_t fp;
        in >> key >> tag >> key >> r >> s >> n >> key >> std::hex >> fp >> std::dec >> key >> dt >> db;
        if (tag != tag_ || !(GenSet(r, s, n) == g_) || fp != fingerprint_ || dt != c.dt || db != c.db) return false;
        std::size_t ncols, nrows;
        in >> key >> ncols;
        if (key != "cols") return false;
        for (std::size_t k = 0; k < ncols; ++k) {
            std::string code;
            in >> code;
            c.cols.push_back(word_decode(code));
        }
        for (std::size_t k = 0; k < c.cols.size(); ++k) c.col_of.emplace(c.cols[k], static_cast<int>(k));
        in >> key >> nrows;
        if (key != "rows") return false;
        for (std::size_t k = 0; k < nrows; ++k) {
            std::size_t len;
            in >> len;
            SparseVec<F> row;
            for (std::size_t e = 0; e < len; ++e) {
                int col;
                std::string coeff;
                in >> col >> coeff;
                row.emplace(col, parse_coeff<F>(coeff, convert_));
            }
            c.rref.insert(std::move(row));
        }
        std::string end;
        in >> end;
        if (!in || end != "end") return false;
    } catch (const std::exception&) {
        return false;
    }
    c.rref.back_substitute();
    c.col_to_basis.assign(c.cols.size(), -1);
    for (std::size_t k = 0; k < c.cols.size(); ++k) {
        if (c.rref.is_pivot(static_cast<int>(k))) continue;
        c.col_to_basis[k] = static_cast<int>(c.basis.size());
        c.basis_of.emplace(c.cols[k], static_cast<int>(c.basis.size()));
        c.basis.push_back(c.cols[k]);
    }
    return true;
}

template <class F>
void GradedAlgebra<F>::store(const Component<F>& c) const {
    if (opt_.cache_dir.empty()) return;
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(opt_.cache_dir, ec);
    const std::string path = cache_path(c.dt, c.db);
    std::ostringstream name;
    name << path << ".tmp" << std::random_device{}();
    {
        std::ofstream out(name.str());
        if (!out) return;
        out << kCacheMagic << ' ' << kCacheVersion << '\n';
        out << "tag " << tag_ << '\n';
        out << "gens " << g_.r << ' ' << g_.s << ' ' << g_.n << '\n';
        out << "fingerprint " << std::hex << fingerprint_ << std::dec << '\n';
        out << "bidegree " << c.dt << ' ' << c.db << '\n';
        out << "cols " << c.cols.size() << '\n';
        for (const Word& w : c.cols) out << word_code(w) << '\n';
        out << "rows " << c.rref.rank() << '\n';
        for (const auto& [p, row] : c.rref.rows()) {
            out << row.size();
            for (const auto& [col, x] : row) out << ' ' << col << ' ' << x.to_string();
            out << '\n';
        }
        out << "end\n";
        if (!out) return;
    }
    fs::rename(name.str(), path, ec);
    if (ec) fs::remove(name.str(), ec);
}

template class GradedAlgebra<QScalar>;
template class GradedAlgebra<ModScalar>;

ExactAlgebra make_exact(const GenSet& g, const std::vector<Elem>& relations, GradedOptions opt) {
    return ExactAlgebra(g, relations, [](const QScalar& c) { return c; }, "exact", std::move(opt));
}

GradedAlgebra<ModScalar> make_modular(const GenSet& g, const std::vector<Elem>& relations, std::uint64_t p,
                                      std::uint64_t q0, GradedOptions opt) {
    return GradedAlgebra<ModScalar>(
        g, relations, [p, q0](const QScalar& c) { return c.eval_mod(p, q0); },
        "mod" + std::to_string(p) + "at" + std::to_string(q0), std::move(opt));
}

namespace {

std::vector<std::pair<int, int>> bidegrees(const GenSet& g, int d_max) {
    std::vector<std::pair<int, int>> out;
    for (int d = 0; d <= d_max; ++d)
        for (int dt = d; dt >= 0; --dt) {
            const int db = d - dt;
            if ((dt > 0 && g.r == 0) || (db > 0 && g.s == 0)) continue;
            out.emplace_back(dt, db);
        }
    return out;
}

template <class F>
void fill(GradedAlgebra<F>& alg, const std::vector<std::pair<int, int>>& bds, DimsTable& t) {
    for (auto bd : bds) {
        t.words[bd] = word_count(alg.gens(), bd.first, bd.second);
        try {
            t.dims[bd] = alg.dim(bd.first, bd.second);
        } catch (const ResourceGuard&) {
            t.dims.erase(bd);
        }
    }
}

}  // namespace

DimsTable dims_table(const GenSet& g, const std::vector<Elem>& relations, int d_max, Mode mode, std::uint64_t seed,
                     GradedOptions opt) {
    const auto bds = bidegrees(g, d_max);
    DimsTable t;
    if (mode == Mode::Exact) {
        ExactAlgebra alg = make_exact(g, relations, opt);
        fill(alg, bds, t);
        t.method = "exact";
        return t;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(2, kFastPrime - 2);
    std::vector<DimsTable> runs;
    while (runs.size() < 2) {
        const std::uint64_t q0 = pick(rng);
        try {
            auto alg = make_modular(g, relations, kFastPrime, q0, opt);
            DimsTable r;
            fill(alg, bds, r);
            runs.push_back(std::move(r));
        } catch (const BadEvaluationPoint&) {
            continue;
        } catch (const DivisionByZero&) {
            continue;
        }
    }
    if (runs[0].dims == runs[1].dims) {
        t = runs[0];
        t.method = "modular";
        return t;
    }
    ExactAlgebra alg = make_exact(g, relations, opt);
    fill(alg, bds, t);
    t.method = "modular->exact";
    return t;
}

long long classical_dim(int r, int n, int d) {
    const long long m = static_cast<long long>(r) * n;
    auto binom = [](long long a, long long b) -> long long {
        if (b < 0 || a < b) return 0;
        long long v = 1;
        for (long long k = 1; k <= b; ++k) v = v * (a - b + k) / k;
        return v;
    };
    long long total = 0;
    for (long long k = 0; k <= std::min<long long>(m, d); ++k) total += binom(m, k) * binom(m + d - k - 1, d - k);
    if (d == 0) return 1;
    return total;
}

std::string cache_dir_from_env() {
    const char* v = std::getenv("QQINV_CACHE_DIR");
    return v ? std::string(v) : std::string();
}

}  // namespace qqinv
