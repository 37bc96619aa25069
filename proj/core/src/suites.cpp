namespace qdyn {}
