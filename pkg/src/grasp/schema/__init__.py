# Grasp domain types and fixture loading
