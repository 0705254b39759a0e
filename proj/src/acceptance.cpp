namespace curvehall {
}  // namespace curvehall
