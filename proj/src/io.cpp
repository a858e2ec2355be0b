namespace nfield {}
