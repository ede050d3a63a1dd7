#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eqalg/rational.hpp"

namespace eqalg::godement {

/// ---- Level 1: germs along the tail of P --------------------------------
///
/// A stalk-family near a limit point of a P-line, along the canonical
/// decreasing enumeration 1/n, 1/(n+1), ... of a punctured basic
/// neighborhood: a value at the base point, finitely many leading values,
/// then a repeating tail. Values are anchored absolutely: position t holds
/// prefix[t] for t < |prefix| and period[t mod |period|] afterwards, so
/// germ comparisons are position-stable.
struct GermFamily {
    Rational at_point;
    std::vector<Rational> prefix;
    std::vector<Rational> period; // nonempty

    Rational value(std::size_t t) const;
};

GermFamily germ_constant(const Rational& q);
GermFamily make_germ(Rational at_point, std::vector<Rational> prefix, std::vector<Rational> period);

GermFamily germ_add(const GermFamily& a, const GermFamily& b);
GermFamily germ_sub(const GermFamily& a, const GermFamily& b);
GermFamily germ_scale(const GermFamily& a, const Rational& q);

/// Agreement at the base point and on a tail; exact via one common period
/// window past both prefixes.
bool germ_equal(const GermFamily& a, const GermFamily& b);

/// True when the family is the germ of a continuous section of the
/// constant sheaf: eventually constant with the base value equal to the
/// tail constant.
bool is_section_germ(const GermFamily& f);
/// The same decision on a literal truncation of the family (oracle for the
/// fragment-soundness property; exact once len covers prefix + period).
bool is_section_germ_bruteforce(const GermFamily& f, std::size_t len);

/// Tail eventually constant (ignores the base value).
bool tail_eventually_constant(const GermFamily& f);
/// Tail-only class comparison: difference eventually constant.
bool tail_class_equal(const GermFamily& a, const GermFamily& b);

/// ---- Level-1 cokernel classes ------------------------------------------
///
/// Classes of germ families modulo section germs: the stalk of the first
/// cokernel of the Godement resolution of the constant sheaf at a limit
/// point of a P-line.
struct Level1Class {
    GermFamily rep;
};

Level1Class class_of(GermFamily f);
bool class_zero(const Level1Class& c);
bool class_equal(const Level1Class& a, const Level1Class& b);
Level1Class class_add(const Level1Class& a, const Level1Class& b);
Level1Class class_sub(const Level1Class& a, const Level1Class& b);
Level1Class class_scale(const Level1Class& a, const Rational& q);

/// alpha at level 1: q -> class of (q at the point, zero elsewhere).
Level1Class alpha1(const Rational& q);
/// Membership in the image of alpha1 (equivalently: some base-value shift
/// lands in the section germs), decided by aligning the base value with
/// the tail.
bool in_image_alpha1(const Level1Class& c);

/// The alternating-tail generator of the level-1 cokernel: (0; 1,0,1,0,...).
Level1Class alternating_class();

/// ---- Level 2: the double limit of P^2 -----------------------------------
///
/// Stalk classes at the double limit point. The base value is a class of
/// doubly periodic serrations modulo locally constant functions; the rest
/// of the family assigns a level-1 class to every row limit (infinity, b)
/// and column limit (a, infinity), eventually periodically in b and a.
struct Pattern2D {
    Rational at_point;
    std::vector<std::vector<Rational>> tile; // v rows x h cols, anchored at (0,0)

    Rational value(std::size_t row, std::size_t col) const;
};

Pattern2D pattern_constant(const Rational& q);
Pattern2D make_pattern(Rational at_point, std::vector<std::vector<Rational>> tile);
bool pattern_zero_class(const Pattern2D& p); // constant tile with matching base value
bool pattern_class_equal(const Pattern2D& a, const Pattern2D& b);

/// Eventually periodic outer sequence of level-1 classes, anchored
/// absolutely like GermFamily.
struct OuterSeq {
    std::vector<Level1Class> prefix;
    std::vector<Level1Class> period; // nonempty

    const Level1Class& value(std::size_t t) const;
};

OuterSeq outer_constant(const Level1Class& c);
OuterSeq make_outer(std::vector<Level1Class> prefix, std::vector<Level1Class> period);

struct Level2Family {
    Pattern2D at_point;
    OuterSeq rows; // class at (infinity, b) for b = 0, 1, ...
    OuterSeq cols; // class at (a, infinity) for a = 0, 1, ...
};

/// alpha at level 2: a base class with zero row and column families.
Level2Family alpha2(const Pattern2D& a);

/// Realizability of the off-point family by a single zone-periodic
/// serration: rows force the main tile up to per-row constants, so the
/// column classes must differ from the tile's vertical slices by one
/// common class. Decided exactly inside the fragment.
bool level2_in_image_alpha2(const Level2Family& w);
/// Zero test: realizability with the base class matched as well.
bool level2_zero(const Level2Family& w);
bool level2_equal(const Level2Family& a, const Level2Family& b);
Level2Family level2_sub(const Level2Family& a, const Level2Family& b);

/// ---- Witnesses and reports ----------------------------------------------

enum class Space { Discrete, P, P2 };

struct Witness {
    bool exists = false;
    std::string reason;             // set when no witness exists
    int level = 0;                  // 1 or 2
    std::optional<Level1Class> w1;
    std::optional<Level2Family> w2;
    bool verified = false;          // independent re-verification verdict
};

/// Nonvanishing witness for the top cokernel in the stated degree,
/// machine-checked to be nonzero and outside the alpha image.
Witness ext_witness(Space x, int degree);

/// Independent verification passes using only germ equality and section
/// tests, not the constructions above.
bool verify_witness_p(const Level1Class& w);
bool verify_witness_p2(const Level2Family& w);

/// A point of P (b ignored) or P^2; kInfinityCoord marks the limit.
constexpr int kInfinityCoord = -1;
struct FragPoint {
    int a = 0;
    int b = 0;
};

int frag_height(Space x, FragPoint p);

/// True when the level-k Godement stalk of the constant sheaf at the
/// point is zero.
bool ck_stalk_zero(Space x, int k, FragPoint p);
/// The statement of the vanishing lemma at one instance: stalks vanish
/// strictly above the point's height.
bool ck_stalk_vanishing_check(Space x, int k, FragPoint p);

struct HomComplexTerm {
    int degree = 0;
    std::string object;
    bool zero = false;
};
/// The complex obtained by mapping a point skyscraper into the Godement
/// resolution at a point of maximal height.
std::vector<HomComplexTerm> hom_complex(Space x);

struct ExtReport {
    Space space;
    int rank = 0;
    std::vector<bool> nonzero; // degrees 0..rank
    Witness witness;           // top-degree witness when one exists
};
ExtReport ext_report(Space x);

std::string space_name(Space x);

} // namespace eqalg::godement
