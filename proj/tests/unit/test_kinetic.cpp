#include <doctest.h>

TEST_SUITE_BEGIN("kinetic");
TEST_SUITE_END();
