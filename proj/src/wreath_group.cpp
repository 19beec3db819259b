#include "wreathsim/wreath_group.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wreathsim {

Perm::Perm(std::vector<uint8_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (uint8_t v : images_) {
        if (v >= images_.size() || seen[v])
            throw std::invalid_argument("Perm: image table is not a bijection");
        seen[v] = true;
    }
}

Perm Perm::identity(int n) {
    std::vector<uint8_t> im(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) im[static_cast<size_t>(i)] = static_cast<uint8_t>(i);
    return Perm(std::move(im));
}

Perm Perm::from_images(std::initializer_list<int> images) {
    std::vector<uint8_t> im;
    im.reserve(images.size());
    for (int v : images) {
        if (v < 0 || v > 255) throw std::invalid_argument("Perm: image out of range");
        im.push_back(static_cast<uint8_t>(v));
    }
    return Perm(std::move(im));
}

Perm Perm::compose(const Perm& rhs) const {
    if (degree() != rhs.degree())
        throw std::invalid_argument("Perm::compose: degree mismatch");
    std::vector<uint8_t> im(images_.size());
    for (size_t i = 0; i < im.size(); ++i) im[i] = images_[rhs.images_[i]];
    return Perm(std::move(im));
}

Perm Perm::inverse() const {
    std::vector<uint8_t> im(images_.size());
    for (size_t i = 0; i < im.size(); ++i) im[images_[i]] = static_cast<uint8_t>(i);
    return Perm(std::move(im));
}

int Perm::sign() const {
    int n = degree();
    std::vector<bool> seen(static_cast<size_t>(n), false);
    int s = 1;
    for (int i = 0; i < n; ++i) {
        if (seen[static_cast<size_t>(i)]) continue;
        int len = 0;
        for (int j = i; !seen[static_cast<size_t>(j)]; j = images_[static_cast<size_t>(j)]) {
            seen[static_cast<size_t>(j)] = true;
            ++len;
        }
        if (len % 2 == 0) s = -s;
    }
    return s;
}

uint64_t Perm::lehmer_rank() const {
    // O(n^2); fine for the degrees this project handles.
    int n = degree();
    uint64_t r = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (images_[static_cast<size_t>(j)] < images_[static_cast<size_t>(i)]) ++smaller;
        r = r * static_cast<uint64_t>(n - i) + static_cast<uint64_t>(smaller);
    }
    return r;
}

Perm Perm::from_lehmer_rank(int n, uint64_t rank) {
    if (rank >= factorial(n)) throw std::invalid_argument("Perm: rank out of range");
    std::vector<uint8_t> items(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) items[static_cast<size_t>(i)] = static_cast<uint8_t>(i);
    std::vector<uint8_t> im;
    im.reserve(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        uint64_t f = factorial(n - 1 - i);
        size_t d = static_cast<size_t>(rank / f);
        rank %= f;
        im.push_back(items[d]);
        items.erase(items.begin() + static_cast<std::ptrdiff_t>(d));
    }
    return Perm(std::move(im));
}

std::string Perm::to_string() const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < degree(); ++i) {
        if (i) os << ' ';
        os << static_cast<int>(images_[static_cast<size_t>(i)]);
    }
    os << ']';
    return os.str();
}

WreathElement WreathElement::identity(int n) {
    return WreathElement{Perm::identity(n), Perm::identity(n), 0};
}

bool WreathElement::is_identity() const {
    return swap_bit == 0 && sigma == Perm::identity(degree()) && tau == Perm::identity(degree());
}

bool WreathElement::is_involutive_swap() const {
    return swap_bit == 1 && tau == sigma.inverse();
}

std::string WreathElement::to_string() const {
    return "(" + sigma.to_string() + "," + tau.to_string() + "," + std::to_string(swap_bit) + ")";
}

WreathElement compose(const WreathElement& x, const WreathElement& y) {
    if (x.degree() != y.degree())
        throw std::invalid_argument("compose: degree mismatch");
    // y applied first; when y crosses blocks, x's components trade places.
    if (y.swap_bit == 0)
        return WreathElement{x.sigma.compose(y.sigma), x.tau.compose(y.tau),
                             x.swap_bit ^ y.swap_bit};
    return WreathElement{x.tau.compose(y.sigma), x.sigma.compose(y.tau),
                         x.swap_bit ^ y.swap_bit};
}

WreathElement inverse(const WreathElement& x) {
    if (x.swap_bit == 0)
        return WreathElement{x.sigma.inverse(), x.tau.inverse(), 0};
    return WreathElement{x.tau.inverse(), x.sigma.inverse(), 1};
}

Perm embed_s2n(const WreathElement& x) {
    int n = x.degree();
    std::vector<uint8_t> im(static_cast<size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
        if (x.swap_bit == 0) {
            im[static_cast<size_t>(i)] = static_cast<uint8_t>(x.sigma(i));
            im[static_cast<size_t>(n + i)] = static_cast<uint8_t>(n + x.tau(i));
        } else {
            im[static_cast<size_t>(i)] = static_cast<uint8_t>(n + x.sigma(i));
            im[static_cast<size_t>(n + i)] = static_cast<uint8_t>(x.tau(i));
        }
    }
    return Perm(std::move(im));
}

std::vector<WreathElement> involutive_swaps(int n) {
    if (n < 1) throw std::invalid_argument("involutive_swaps: n must be >= 1");
    uint64_t f = factorial(n);
    std::vector<WreathElement> out;
    out.reserve(f);
    for (uint64_t r = 0; r < f; ++r) {
        Perm g = Perm::from_lehmer_rank(n, r);
        out.push_back(WreathElement{g, g.inverse(), 1});
    }
    return out;
}

uint64_t factorial(int n) {
    if (n < 0 || n > 20) throw std::invalid_argument("factorial: out of range");
    uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<uint64_t>(i);
    return f;
}

GroupIndexer::GroupIndexer(int n) : n_(n) {
    // (8!)^2 indexing still sits comfortably in 64 bits; beyond is out of
    // desk scale.
    if (n < 1 || n > 8) throw std::invalid_argument("GroupIndexer: n must be in [1,8]");
    uint64_t f = factorial(n);
    order_ = 2 * f * f;
}

uint64_t GroupIndexer::rank(const WreathElement& x) const {
    if (x.degree() != n_) throw std::invalid_argument("GroupIndexer::rank: degree mismatch");
    uint64_t f = factorial(n_);
    return (static_cast<uint64_t>(x.swap_bit) * f + x.sigma.lehmer_rank()) * f +
           x.tau.lehmer_rank();
}

WreathElement GroupIndexer::unrank(uint64_t r) const {
    if (r >= order_) throw std::invalid_argument("GroupIndexer::unrank: index out of range");
    uint64_t f = factorial(n_);
    uint64_t lt = r % f;
    r /= f;
    uint64_t ls = r % f;
    int b = static_cast<int>(r / f);
    return WreathElement{Perm::from_lehmer_rank(n_, ls), Perm::from_lehmer_rank(n_, lt), b};
}

}  // namespace wreathsim
