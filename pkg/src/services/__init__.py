"""
Services layer - estimation, testing, resampling and simulation built on the models and kernels.
"""
