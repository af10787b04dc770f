#pragma once

#include "cohclass/subcat.hpp"

#include <string>
#include <vector>

namespace cohclass {

struct ClassSummary {
    std::string label;    // canonical Ass / Supp set label
    std::string witness;  // one generating pool subset
    size_t size = 0;      // objects in the class
    int subsets = 0;      // pool subsets landing on it
};

struct VerifyReport {
    std::string theorem;
    std::string backend;
    std::string window;
    std::vector<std::string> pool;
    std::vector<ClassSummary> classes;
    std::vector<std::string> counterexamples;
    bool pass = false;

    std::string to_json() const;  // stable key order
};

/// Exhaustive check over every subset of the generator pool that the
/// {sub, ext} (+ twist on P1) closure equals its Ass-predicted class, the
/// assignment is a bijection onto the realized Ass subsets, and inclusion
/// of classes matches inclusion of Ass sets.
VerifyReport verify_takahashi(Universe& u, const std::vector<int>& pool, int threads);

/// {quot, ext} (+ twist) closures equal their Supp-predicted classes and are
/// closed under subs, kernels, cokernels, images (and tensoring where the
/// backend can compute it): torsion classes are Serre subcategories.
VerifyReport verify_gabriel_serre(Universe& u, const std::vector<int>& pool, int threads);

/// {image, ext} closures coincide with {sub, ext} closures and with the
/// intersection of the torsion and torsionfree closures.
VerifyReport verify_ie_torf(Universe& u, const std::vector<int>& pool, int threads);

struct SerreVerifyResult {
    VerifyReport report;
    Lattice lattice;
};

/// Serre subcategories of the torsionfree class with associated points in
/// phi correspond to the specialization-closed subsets of phi: each
/// predicted class is conflation-biclosed, and enlarging one by any outside
/// object jumps exactly to the next predicted class.
SerreVerifyResult verify_serre_in_torf(Universe& u, std::uint64_t phi_mask, int threads);

}  // namespace cohclass
