#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include "cfdim/numeric.hpp"

int main(int argc, char** argv) {
    cfdim::set_real_precision_bits(128);
    return doctest::Context(argc, argv).run();
}
