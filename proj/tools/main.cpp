#include "cli_app.hpp"

int main(int argc, char** argv) { return idealcount::cli::run(argc, argv); }
