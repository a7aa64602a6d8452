#include <doctest.h>

TEST_SUITE_BEGIN("equilibrium");
TEST_SUITE_END();
