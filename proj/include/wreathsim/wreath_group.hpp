#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace wreathsim {

// A permutation of {0,...,n-1} stored as an image table.
class Perm {
public:
    Perm() = default;
    explicit Perm(std::vector<uint8_t> images);  // validates bijection
    static Perm identity(int n);
    static Perm from_images(std::initializer_list<int> images);

    int degree() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[static_cast<size_t>(i)]; }

    // Apply rhs first: (a.compose(b))(i) == a(b(i)).
    Perm compose(const Perm& rhs) const;
    Perm inverse() const;
    int sign() const;  // +1 even, -1 odd

    // Rank within the lexicographic order of S_n image tables.
    uint64_t lehmer_rank() const;
    static Perm from_lehmer_rank(int n, uint64_t rank);

    bool operator==(const Perm&) const = default;
    std::string to_string() const;

private:
    std::vector<uint8_t> images_;
};

// One element of G = S_n wr S_2 written as the triple (sigma, tau, b).
// With b=1 the element crosses the two n-vertex blocks.
struct WreathElement {
    Perm sigma;
    Perm tau;
    int swap_bit = 0;

    int degree() const { return sigma.degree(); }
    static WreathElement identity(int n);
    bool is_identity() const;
    bool is_involutive_swap() const;  // of the form (g, g^{-1}, 1)
    bool operator==(const WreathElement&) const = default;
    std::string to_string() const;
};

// Group product x*y under "apply right factor first" composition; the
// embedding into S_{2n} is a homomorphism for exactly this formula.
WreathElement compose(const WreathElement& x, const WreathElement& y);
WreathElement inverse(const WreathElement& x);

// Injective homomorphism into S_{2n}: vertices 0..n-1 form the first block,
// n..2n-1 the second. b=0 keeps blocks (i -> sigma(i), n+j -> n+tau(j));
// b=1 crosses them (i -> n+sigma(i), n+j -> tau(j)).
Perm embed_s2n(const WreathElement& x);

// The n! elements (g, g^{-1}, 1), ordered lexicographically by g.
std::vector<WreathElement> involutive_swaps(int n);

uint64_t factorial(int n);

// Bijection between G and [0, 2*(n!)^2), ordered lexicographically on
// (swap_bit, lehmer(sigma), lehmer(tau)). rank(identity) == 0.
class GroupIndexer {
public:
    explicit GroupIndexer(int n);  // throws for n < 1 or n > 8
    int degree() const { return n_; }
    uint64_t order() const { return order_; }
    uint64_t rank(const WreathElement& x) const;
    WreathElement unrank(uint64_t r) const;

private:
    int n_;
    uint64_t order_;
};

}  // namespace wreathsim
