#include <doctest.h>

TEST_SUITE_BEGIN("config_snapshot");
TEST_SUITE_END();
