from .planter import PlantSpec, plant, reject_sample

__all__ = ['PlantSpec', 'plant', 'reject_sample']
