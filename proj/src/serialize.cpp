// index serialization
